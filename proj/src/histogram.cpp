#include "trichonet/histogram.hpp"

#include <sstream>

namespace trichonet {

DegreeHistogram::DegreeHistogram(std::map<int, std::int64_t> counts)
    : counts_(std::move(counts)) {
  for (const auto& [degree, count] : counts_) {
    if (degree < 0) throw DataError("degrees must be nonnegative");
    if (count < 0) throw DataError("counts must be nonnegative");
    total_ += count;
  }
}

DegreeHistogram DegreeHistogram::from_degrees(const std::vector<int>& degrees) {
  DegreeHistogram hist;
  for (int d : degrees) hist.add(d);
  return hist;
}

int DegreeHistogram::k_min() const {
  if (counts_.empty()) throw DataError("empty histogram has no support");
  return counts_.begin()->first;
}

int DegreeHistogram::k_max() const {
  if (counts_.empty()) throw DataError("empty histogram has no support");
  return counts_.rbegin()->first;
}

void DegreeHistogram::add(int degree, std::int64_t count) {
  if (degree < 0) throw DataError("degrees must be nonnegative");
  if (count < 0) throw DataError("counts must be nonnegative");
  counts_[degree] += count;
  total_ += count;
}

std::string histogram_to_csv(const DegreeHistogram& hist) {
  std::ostringstream out;
  out << "degree,count\n";
  for (const auto& [degree, count] : hist.counts()) out << degree << ',' << count << '\n';
  return out.str();
}

}  // namespace trichonet
