#include "trichonet/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace trichonet {

namespace {

double validated_prob_weight(std::span<const double> init_probs) {
  double sum = 0.0;
  for (double p : init_probs) {
    if (p < 0.0) throw ParamError("mixture weights must be nonnegative");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw ParamError("mixture weights must sum to 1");
  return sum;
}

}  // namespace

double ClosedFormPmf::sum() const {
  return std::accumulate(probabilities.begin(), probabilities.end(), 0.0);
}

double poisson_network_pmf(int k, double mean) {
  if (!(mean > 0.0)) throw ParamError("poisson mean must be positive");
  if (k < 0) throw DomainError("poisson degree must be >= 0");
  return std::exp(k * std::log(mean) - mean - std::lgamma(k + 1.0));
}

double exp_network_pmf(int k) {
  if (k < 1) throw DomainError("exp-network degree must be >= 1");
  return std::exp2(-static_cast<double>(k));
}

double trunc_geom_mixture_pmf(int k, std::span<const double> init_probs) {
  if (k < 1) throw DomainError("mixture degree must be >= 1");
  validated_prob_weight(init_probs);
  double acc = 0.0;
  const int terms = std::min<int>(k - 1, static_cast<int>(init_probs.size()));
  for (int i = 1; i <= terms; ++i)
    acc += init_probs[i - 1] * 0.5 * std::exp2(-static_cast<double>(k - i));
  return acc;
}

double ba_power_law_pmf(int k) {
  if (k < 1) throw DomainError("power-law degree must be >= 1");
  const double kd = k;
  return 4.0 / (kd * (kd + 1.0) * (kd + 2.0));
}

double trunc_power_law_mixture_pmf(int k, std::span<const double> init_probs) {
  if (k < 1) throw DomainError("mixture degree must be >= 1");
  validated_prob_weight(init_probs);
  double acc = 0.0;
  const int terms = std::min<int>(k, static_cast<int>(init_probs.size()));
  for (int i = 1; i <= terms; ++i) {
    if (init_probs[i - 1] == 0.0) continue;
    // prod_{j=i}^{k-1} j/(j+3) = [Gamma(k)/Gamma(i)] * [Gamma(i+3)/Gamma(k+3)]
    const double log_prod = std::lgamma(static_cast<double>(k)) - std::lgamma(static_cast<double>(i)) +
                            std::lgamma(i + 3.0) - std::lgamma(k + 3.0);
    acc += init_probs[i - 1] * (2.0 / (2.0 + i)) * std::exp(log_prod);
  }
  return acc;
}

TrichotomyEvaluator::TrichotomyEvaluator(const ModelParams& params, double gamma,
                                         std::int64_t network_size, bool enforce_gamma_range)
    : params_(params), gamma_(gamma), n_(network_size) {
  params_.validate();
  if (!params_.bounded_above())
    throw ParamError("trichotomy closed form requires finite bounds; the unbounded "
                     "regime is the pure power law");
  if (enforce_gamma_range)
    GammaExponent::checked(gamma, params_);
  else if (!(gamma > 0.0))
    throw ParamError("gamma must be positive");
  if (n_ < 1) throw ParamError("network size must be >= 1");

  // log-sum-exp over the full support defines the normalization constant.
  double max_log = -std::numeric_limits<double>::infinity();
  std::vector<double> logs;
  logs.reserve(static_cast<std::size_t>(std::min<std::int64_t>(n_, 1 << 22)));
  for (std::int64_t k = 1; k <= n_; ++k) {
    const double lp = log_unnormalized(k);
    logs.push_back(lp);
    max_log = std::max(max_log, lp);
  }
  double acc = 0.0;
  for (double lp : logs) acc += std::exp(lp - max_log);
  log_norm_ = max_log + std::log(acc);
  norm_ = std::exp(-log_norm_);
}

double TrichotomyEvaluator::log_unnormalized(std::int64_t k) const {
  if (k < 1 || k > n_) throw DomainError("degree outside trichotomy support");
  const double L = params_.lower_bound;
  const double LL = params_.lower_threshold;
  const double U = *params_.upper_bound;
  const double UU = *params_.upper_threshold;
  const double g = gamma_;
  const double log_head_ratio = std::log(L / (g + L));
  if (k <= LL) return std::log(g / (g + L)) + (k - 1) * log_head_ratio;
  const double log_mid_const = std::log(g / L) + std::lgamma(g + LL + 1.0) -
                               std::lgamma(LL) + LL * log_head_ratio;
  if (k <= UU)
    return log_mid_const + std::lgamma(static_cast<double>(k)) - std::lgamma(k + g + 1.0);
  return std::log(g / (g + U)) + (k - UU - 1.0) * std::log(U / (g + U)) +
         std::log(UU / g) + log_mid_const + std::lgamma(UU) - std::lgamma(UU + g + 1.0);
}

double TrichotomyEvaluator::operator()(std::int64_t k) const {
  return std::exp(log_unnormalized(k) - log_norm_);
}

ClosedFormPmf TrichotomyEvaluator::evaluate(std::int64_t k_hi) const {
  if (k_hi < 1 || k_hi > n_) throw DomainError("evaluation range outside support");
  ClosedFormPmf pmf;
  pmf.k_min = 1;
  pmf.k_max = static_cast<int>(k_hi);
  pmf.source = PmfSource::Trichotomy;
  pmf.params = params_;
  pmf.probabilities.resize(static_cast<std::size_t>(k_hi));
  for (std::int64_t k = 1; k <= k_hi; ++k)
    pmf.probabilities[static_cast<std::size_t>(k - 1)] = (*this)(k);
  return pmf;
}

double trichotomy_pmf(std::int64_t k, const ModelParams& params, GammaExponent gamma,
                      std::int64_t network_size) {
  GammaExponent::checked(gamma.value, params);
  TrichotomyEvaluator eval(params, gamma.value, network_size);
  return eval(k);
}

ResidentialTimeSpec ResidentialTimeSpec::case1(double lambda, double horizon) {
  return with_rate(ResidentialCase::Case1_BA, 2.0 * lambda, horizon);
}

ResidentialTimeSpec ResidentialTimeSpec::case2(double lambda, int lower_bound, double horizon) {
  return with_rate(ResidentialCase::Case2_LargeU, lambda * (lower_bound + 1.0), horizon);
}

ResidentialTimeSpec ResidentialTimeSpec::case3(double lambda, int lower_bound, double horizon) {
  return with_rate(ResidentialCase::Case3_SmallU, lambda * lower_bound, horizon);
}

ResidentialTimeSpec ResidentialTimeSpec::with_rate(ResidentialCase kind, double rate,
                                                   double horizon) {
  if (!(rate > 0.0)) throw ParamError("residential rate must be positive");
  if (!(horizon > 0.0)) throw ParamError("residential horizon must be positive");
  return ResidentialTimeSpec{kind, rate, horizon};
}

double residential_time_density(double t, const ResidentialTimeSpec& spec) {
  if (t < 0.0 || t > spec.horizon) throw DomainError("time outside [0, horizon]");
  const double normalizer = std::isinf(spec.horizon)
                                ? 1.0
                                : 1.0 - std::exp(-spec.rate * spec.horizon);
  return spec.rate * std::exp(-spec.rate * t) / normalizer;
}

}  // namespace trichonet
