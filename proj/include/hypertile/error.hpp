#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hypertile {

class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

// Raised when a search or enumeration would exceed the configured work cap.
class BudgetExceeded : public Error {
   public:
    explicit BudgetExceeded(const std::string& what) : Error("budget exceeded: " + what) {}
};

class InvalidEdge : public Error {
   public:
    InvalidEdge(std::size_t edge_index, const std::string& why)
        : Error("edge " + std::to_string(edge_index) + ": " + why), edge_index_(edge_index) {}

    std::size_t edge_index() const noexcept { return edge_index_; }

   private:
    std::size_t edge_index_;
};

}  // namespace hypertile
