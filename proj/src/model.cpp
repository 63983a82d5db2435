#include "trichonet/model.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace trichonet {

void ModelParams::validate() const {
  if (lower_bound < 1) throw ParamError("lower_bound must be a positive integer");
  if (lower_threshold < lower_bound)
    throw ParamError("lower_bound must not exceed lower_threshold");
  if (upper_bound.has_value() != upper_threshold.has_value())
    throw ParamError("upper_bound and upper_threshold must be both finite or both absent");
  if (upper_bound) {
    if (*upper_threshold > *upper_bound)
      throw ParamError("upper_threshold must not exceed upper_bound");
    if (lower_threshold > *upper_threshold)
      throw ParamError("lower_threshold must not exceed upper_threshold");
  }
  if (!(arrival_rate > 0.0)) throw ParamError("arrival_rate must be positive");
  if (starting_degree != 0 && starting_degree != 1)
    throw ParamError("starting_degree must be 0 or 1");
  if (init_conn_probs.empty()) throw ParamError("init_conn_probs must be nonempty");
  if (static_cast<int>(init_conn_probs.size()) > lower_threshold + 1)
    throw ParamError("init_conn_probs may have at most lower_threshold + 1 entries");
  double sum = 0.0;
  for (double p : init_conn_probs) {
    if (p < 0.0) throw ParamError("init_conn_probs entries must be nonnegative");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw ParamError("init_conn_probs must sum to 1");
}

int modified_degree(int degree, const ModelParams& params) {
  if (degree == params.starting_degree - 1) return 0;
  if (degree < params.starting_degree)
    throw DomainError("degree " + std::to_string(degree) + " below starting degree");
  if (degree <= params.lower_threshold) return params.lower_bound;
  if (!params.upper_threshold || degree <= *params.upper_threshold) return degree;
  return *params.upper_bound;
}

GammaExponent GammaExponent::checked(double value, const ModelParams& params) {
  const double lo = params.lower_bound;
  if (!(value >= lo && value <= lo + 1.0))
    throw ParamError("gamma must lie in [L, L+1]");
  return GammaExponent{value};
}

GammaExponent default_gamma(const ModelParams& params, std::int64_t network_size) {
  params.validate();
  const double lo = params.lower_bound;
  if (!params.upper_bound) return GammaExponent{lo + 1.0};
  double frac = static_cast<double>(*params.upper_bound) / static_cast<double>(network_size);
  if (frac > 1.0) frac = 1.0;
  double g = lo + frac;
  if (g < lo) g = lo;
  if (g > lo + 1.0) g = lo + 1.0;
  return GammaExponent{g};
}

}  // namespace trichonet
