#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "trichonet/errors.hpp"

namespace trichonet {

// Empirical degree counts with normalization to a pmf.
class DegreeHistogram {
 public:
  DegreeHistogram() = default;
  explicit DegreeHistogram(std::map<int, std::int64_t> counts);

  static DegreeHistogram from_degrees(const std::vector<int>& degrees);

  bool empty() const { return counts_.empty(); }
  std::int64_t total() const { return total_; }
  int k_min() const;
  int k_max() const;
  const std::map<int, std::int64_t>& counts() const { return counts_; }

  std::int64_t count(int degree) const {
    auto it = counts_.find(degree);
    return it == counts_.end() ? 0 : it->second;
  }
  double pmf(int degree) const {
    return total_ == 0 ? 0.0 : static_cast<double>(count(degree)) / static_cast<double>(total_);
  }

  void add(int degree, std::int64_t count = 1);

 private:
  std::map<int, std::int64_t> counts_;
  std::int64_t total_ = 0;
};

// Canonical "degree,count" CSV body, sorted by degree, newline-terminated.
std::string histogram_to_csv(const DegreeHistogram& hist);

}  // namespace trichonet
