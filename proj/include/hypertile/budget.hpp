#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>

#include "error.hpp"

namespace hypertile {

inline constexpr std::uint64_t default_budget = 200'000'000;

// HYPERTILE_BUDGET overrides the default cap; malformed values are ignored.
inline std::uint64_t budget_from_env() {
    const char* raw = std::getenv("HYPERTILE_BUDGET");
    if (raw == nullptr || *raw == '\0') return default_budget;
    char* end = nullptr;
    const unsigned long long value = std::strtoull(raw, &end, 10);
    if (end == nullptr || *end != '\0' || value == 0) return default_budget;
    return value;
}

// Counts units of work against a cap. Not thread-safe; one per search.
class WorkCounter {
   public:
    explicit WorkCounter(std::uint64_t limit, std::string what = "search")
        : limit_(limit), what_(std::move(what)) {}

    void tick(std::uint64_t units = 1) {
        used_ += units;
        if (used_ > limit_) throw BudgetExceeded(what_ + " exceeded " + std::to_string(limit_) + " steps");
    }

    std::uint64_t used() const noexcept { return used_; }
    std::uint64_t limit() const noexcept { return limit_; }

   private:
    std::uint64_t limit_;
    std::uint64_t used_ = 0;
    std::string what_;
};

}  // namespace hypertile
