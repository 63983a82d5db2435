#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "trichonet/errors.hpp"

namespace trichonet {

// Parameters of the bounded-preferential-attachment chain.
//
// Attachment weights are *modified degrees*: the degree clamped to
// lower_bound below lower_threshold and to upper_bound above
// upper_threshold. An absent upper_bound/upper_threshold means the
// corresponding clamp is never active (unbounded growth).
struct ModelParams {
  int lower_bound = 1;                       // L
  int lower_threshold = 1;                   // must be >= lower_bound
  std::optional<int> upper_bound;            // U; nullopt = unbounded
  std::optional<int> upper_threshold;        // must be <= upper_bound
  double arrival_rate = 1.0;                 // normalized rate (lambda)
  std::vector<double> init_conn_probs{1.0};  // P{new node makes i connections}, i = 1..size
  int starting_degree = 1;                   // 0 or 1

  bool bounded_above() const { return upper_bound.has_value(); }

  // Validates all invariants; throws ParamError on the first violation.
  void validate() const;

  static ModelParams collapsed(int bound) {
    ModelParams p;
    p.lower_bound = p.lower_threshold = bound;
    p.upper_bound = p.upper_threshold = bound;
    return p;
  }

  static ModelParams unbounded(int lower) {
    ModelParams p;
    p.lower_bound = p.lower_threshold = lower;
    return p;
  }

  static ModelParams bounded(int lower, int upper) {
    ModelParams p;
    p.lower_bound = p.lower_threshold = lower;
    p.upper_bound = p.upper_threshold = upper;
    return p;
  }
};

// Attachment weight of a node with the given degree. By convention the
// degree one below starting_degree has weight 0 (it only appears as a
// boundary term in the degree dynamics).
int modified_degree(int degree, const ModelParams& params);

// Exponent of the residential-time rate, constrained to [L, L+1] by the
// model; construct via checked() unless deliberately extrapolating (the
// fitting pipeline identifies L with the fitted lower threshold, which can
// push gamma outside the model range).
struct GammaExponent {
  double value = 0.0;

  static GammaExponent checked(double value, const ModelParams& params);
  static GammaExponent unchecked(double value) { return GammaExponent{value}; }
};

// Heuristic default: gamma = L + min(1, U/N), the linear interpolation
// between the small-U and large-U regimes.
GammaExponent default_gamma(const ModelParams& params, std::int64_t network_size);

}  // namespace trichonet
