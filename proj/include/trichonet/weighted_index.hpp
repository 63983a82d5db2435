#pragma once

#include <cstdint>
#include <vector>

#include "trichonet/errors.hpp"

namespace trichonet {

// Fenwick (binary indexed) tree over nonnegative integer weights with
// O(log n) point update, prefix sum, and weighted search. Backs the
// attachment-target sampling: node i is drawn with probability
// weight(i) / total().
class WeightedIndex {
 public:
  WeightedIndex() = default;

  std::size_t size() const { return weights_.size(); }
  std::int64_t total() const { return total_; }
  std::int64_t weight(std::size_t i) const { return weights_[i]; }

  void push_back(std::int64_t w) {
    weights_.push_back(0);
    tree_.push_back(0);
    // new tree slot must aggregate the preceding siblings it covers
    const std::size_t idx = tree_.size();  // 1-based position
    const std::size_t lowbit = idx & (~idx + 1);
    std::int64_t acc = 0;
    for (std::size_t step = 1; step < lowbit; step <<= 1) acc += tree_[idx - step - 1];
    tree_.back() = acc;
    update(weights_.size() - 1, w);
  }

  void update(std::size_t i, std::int64_t new_weight) {
    const std::int64_t delta = new_weight - weights_[i];
    if (delta == 0) return;
    weights_[i] = new_weight;
    total_ += delta;
    for (std::size_t idx = i + 1; idx <= tree_.size(); idx += idx & (~idx + 1))
      tree_[idx - 1] += delta;
  }

  // Smallest i such that prefix_sum(i) > target, for 0 <= target < total().
  std::size_t find(std::int64_t target) const {
    if (target < 0 || target >= total_) throw DomainError("weighted search target out of range");
    std::size_t pos = 0;
    std::size_t mask = 1;
    while ((mask << 1) <= tree_.size()) mask <<= 1;
    for (; mask != 0; mask >>= 1) {
      const std::size_t next = pos + mask;
      if (next <= tree_.size() && tree_[next - 1] <= target) {
        pos = next;
        target -= tree_[pos - 1];
      }
    }
    return pos;  // 0-based index of the selected element
  }

 private:
  std::vector<std::int64_t> weights_;
  std::vector<std::int64_t> tree_;
  std::int64_t total_ = 0;
};

}  // namespace trichonet
