#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "budget.hpp"
#include "hypergraph.hpp"

namespace hypertile {

// Algorithm X over a dancing-links incidence structure. Items are 0..items-1,
// every option must be a sorted list of items. Column choice is fail-first
// (fewest remaining options), ties going to the smallest item.
class ExactCover {
   public:
    ExactCover(int items, std::span<const VertexSet> options) : items_(items) {
        const std::size_t header = static_cast<std::size_t>(items) + 1;
        left_.resize(header);
        right_.resize(header);
        up_.resize(header);
        down_.resize(header);
        column_.resize(header);
        row_.resize(header, -1);
        size_.assign(static_cast<std::size_t>(items), 0);
        for (std::size_t i = 0; i < header; ++i) {
            left_[i] = static_cast<std::int32_t>(i == 0 ? items : i - 1);
            right_[i] = static_cast<std::int32_t>(i == static_cast<std::size_t>(items) ? 0 : i + 1);
            up_[i] = down_[i] = static_cast<std::int32_t>(i);
            column_[i] = static_cast<std::int32_t>(i);
        }
        for (std::size_t r = 0; r < options.size(); ++r) {
            std::int32_t first = -1;
            for (Vertex item : options[r]) {
                if (item < 0 || item >= items) throw Error("exact cover option item out of range");
                const std::int32_t col = item + 1;
                const auto node = static_cast<std::int32_t>(left_.size());
                column_.push_back(col);
                row_.push_back(static_cast<std::int32_t>(r));
                up_.push_back(up_[static_cast<std::size_t>(col)]);
                down_.push_back(col);
                down_[static_cast<std::size_t>(up_[static_cast<std::size_t>(col)])] = node;
                up_[static_cast<std::size_t>(col)] = node;
                ++size_[static_cast<std::size_t>(item)];
                if (first < 0) {
                    first = node;
                    left_.push_back(node);
                    right_.push_back(node);
                } else {
                    left_.push_back(left_[static_cast<std::size_t>(first)]);
                    right_.push_back(first);
                    right_[static_cast<std::size_t>(left_[static_cast<std::size_t>(first)])] = node;
                    left_[static_cast<std::size_t>(first)] = node;
                }
            }
        }
    }

    // First solution in search order (option indices ascending), or nullopt once
    // the search space is exhausted. One-shot: a successful search leaves the
    // structure covered.
    std::optional<std::vector<std::size_t>> solve(WorkCounter& counter) {
        std::vector<std::int32_t> chosen;
        if (search(chosen, counter)) {
            std::vector<std::size_t> rows;
            for (auto node : chosen) rows.push_back(static_cast<std::size_t>(row_[static_cast<std::size_t>(node)]));
            std::sort(rows.begin(), rows.end());
            return rows;
        }
        return std::nullopt;
    }

   private:
    std::size_t u(std::int32_t x) const { return static_cast<std::size_t>(x); }

    void cover(std::int32_t col) {
        right_[u(left_[u(col)])] = right_[u(col)];
        left_[u(right_[u(col)])] = left_[u(col)];
        for (auto i = down_[u(col)]; i != col; i = down_[u(i)])
            for (auto j = right_[u(i)]; j != i; j = right_[u(j)]) {
                up_[u(down_[u(j)])] = up_[u(j)];
                down_[u(up_[u(j)])] = down_[u(j)];
                --size_[u(column_[u(j)] - 1)];
            }
    }

    void uncover(std::int32_t col) {
        for (auto i = up_[u(col)]; i != col; i = up_[u(i)])
            for (auto j = left_[u(i)]; j != i; j = left_[u(j)]) {
                ++size_[u(column_[u(j)] - 1)];
                up_[u(down_[u(j)])] = j;
                down_[u(up_[u(j)])] = j;
            }
        right_[u(left_[u(col)])] = col;
        left_[u(right_[u(col)])] = col;
    }

    bool search(std::vector<std::int32_t>& chosen, WorkCounter& counter) {
        counter.tick();
        if (right_[0] == 0) return true;
        std::int32_t best = right_[0];
        for (auto c = right_[0]; c != 0; c = right_[u(c)])
            if (size_[u(c - 1)] < size_[u(best - 1)]) best = c;
        if (size_[u(best - 1)] == 0) return false;
        cover(best);
        for (auto r = down_[u(best)]; r != best; r = down_[u(r)]) {
            chosen.push_back(r);
            for (auto j = right_[u(r)]; j != r; j = right_[u(j)]) cover(column_[u(j)]);
            if (search(chosen, counter)) return true;
            for (auto j = left_[u(r)]; j != r; j = left_[u(j)]) uncover(column_[u(j)]);
            chosen.pop_back();
        }
        uncover(best);
        return false;
    }

    int items_;
    std::vector<std::int32_t> left_, right_, up_, down_, column_, row_;
    std::vector<std::int32_t> size_;
};

}  // namespace hypertile
