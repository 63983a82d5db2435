#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "trichonet/model.hpp"

namespace trichonet {

enum class PmfSource {
  Poisson,
  ExpNetwork,
  TruncGeomMixture,
  BAPowerLaw,
  TruncPowerLawMixture,
  Trichotomy,
  MasterEquation,
};

// An evaluated pmf over an integer degree range [k_min, k_max].
struct ClosedFormPmf {
  int k_min = 1;
  int k_max = 1;
  std::vector<double> probabilities;  // probabilities[i] = P(k_min + i)
  PmfSource source = PmfSource::Poisson;
  ModelParams params;

  double at(int k) const {
    if (k < k_min || k > k_max) throw DomainError("degree outside pmf support");
    return probabilities[static_cast<std::size_t>(k - k_min)];
  }
  double sum() const;
};

// P(k) for the Poisson network, mean = lambda * L * T. Evaluated in log
// space so large k does not overflow.
double poisson_network_pmf(int k, double mean);

// P(k) = 2^{-k} for k >= 1: the exponential-network geometric law with
// parameter 1/2.
double exp_network_pmf(int k);

// Mixture of consecutively truncated geometric(1/2) distributions with
// mixing weights init_probs (init_probs[i-1] = weight of truncation i).
// The sum runs over truncations strictly below k, so k = 1 yields 0.
double trunc_geom_mixture_pmf(int k, std::span<const double> init_probs);

// P(k) = 4 / (k (k+1) (k+2)) for k >= 1.
double ba_power_law_pmf(int k);

// Mixture of consecutively truncated slope -3 power laws with mixing
// weights init_probs; reduces to ba_power_law_pmf when init_probs = {1}.
double trunc_power_law_mixture_pmf(int k, std::span<const double> init_probs);

// Normalized three-branch closed form (geometric head on [1, LL],
// Gamma-ratio power-law middle on (LL, UU], geometric tail above UU) over
// support 1..network_size. All factorial/Gamma ratios go through lgamma.
class TrichotomyEvaluator {
 public:
  // enforce_gamma_range: reject gamma outside [L, L+1]. Evaluation with the
  // range check off is needed when thresholds stand in for bounds (the
  // fit-time identification L := LL).
  TrichotomyEvaluator(const ModelParams& params, double gamma, std::int64_t network_size,
                      bool enforce_gamma_range = true);

  double operator()(std::int64_t k) const;
  double log_unnormalized(std::int64_t k) const;
  ClosedFormPmf evaluate(std::int64_t k_hi) const;  // pmf over 1..k_hi

  double normalization() const { return norm_; }
  double gamma() const { return gamma_; }
  std::int64_t network_size() const { return n_; }

 private:
  ModelParams params_;
  double gamma_;
  std::int64_t n_;
  double log_norm_ = 0.0;  // log of the unnormalized total
  double norm_ = 1.0;      // c = exp(-log_norm_)
};

double trichotomy_pmf(std::int64_t k, const ModelParams& params, GammaExponent gamma,
                      std::int64_t network_size);

// Residential-time density: a truncated exponential on [0, horizon] whose
// rate depends on the bound regime.
enum class ResidentialCase {
  Case1_BA,      // L = LL = 1, unbounded above: rate 2*lambda
  Case2_LargeU,  // upper bound comparable to network size: rate lambda*(L+1)
  Case3_SmallU,  // upper bound far below network size: rate lambda*L
};

struct ResidentialTimeSpec {
  ResidentialCase kind = ResidentialCase::Case3_SmallU;
  double rate = 1.0;      // exponential rate parameter
  double horizon = 1.0;   // observation time; may be infinite

  static ResidentialTimeSpec case1(double lambda, double horizon);
  static ResidentialTimeSpec case2(double lambda, int lower_bound, double horizon);
  static ResidentialTimeSpec case3(double lambda, int lower_bound, double horizon);
  // Same truncated-exponential shape with an explicitly chosen rate
  // (e.g. a self-consistently estimated growth rate between the cases).
  static ResidentialTimeSpec with_rate(ResidentialCase kind, double rate, double horizon);
};

double residential_time_density(double t, const ResidentialTimeSpec& spec);

}  // namespace trichonet
