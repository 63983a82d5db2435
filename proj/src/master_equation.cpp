#include "trichonet/master_equation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace trichonet {

namespace {

// Out-rates lambda * khat(k) for k = 0..k_max, with khat(k0 - 1) = 0.
std::vector<double> rate_table(const ModelParams& params, int k_max) {
  std::vector<double> rates(static_cast<std::size_t>(k_max) + 1, 0.0);
  for (int k = 0; k <= k_max; ++k) {
    const int floor_k = params.starting_degree - 1;
    rates[static_cast<std::size_t>(k)] =
        (k < floor_k) ? 0.0
                      : params.arrival_rate * modified_degree(std::max(k, floor_k), params);
  }
  return rates;
}

void derivative(const std::vector<double>& rates, const std::vector<double>& p,
                std::vector<double>& dp) {
  const std::size_t n = p.size();
  dp[0] = -rates[0] * p[0];
  for (std::size_t k = 1; k < n; ++k)
    dp[k] = rates[k - 1] * p[k - 1] - rates[k] * p[k];
}

}  // namespace

int MasterEquationConfig::effective_max_rate(const ModelParams& params) const {
  return params.bounded_above() ? std::min(k_max, *params.upper_bound) : k_max;
}

void MasterEquationConfig::validate(const ModelParams& params) const {
  params.validate();
  if (k_max < 1) throw ConfigError("k_max must be >= 1");
  const int needed = params.bounded_above() ? *params.upper_threshold + 50 : 200;
  if (k_max < needed)
    throw ConfigError("k_max must be >= " + std::to_string(needed) +
                      " for this parameter set");
  if (!(dt > 0.0)) throw ConfigError("dt must be positive");
  if (!(t_end > 0.0)) throw ConfigError("t_end must be positive");
  const double bound = 0.1 / (params.arrival_rate * effective_max_rate(params));
  if (dt > bound * (1.0 + 1e-12))
    throw ConfigError("stability requires dt <= 0.1 / (lambda * max_rate) = " +
                      std::to_string(bound));
}

MasterEquationGrid integrate_degree_dynamics(
    const ModelParams& params, const std::vector<double>& init,
    const MasterEquationConfig& config,
    const std::function<void(double, const std::vector<double>&)>& step_observer) {
  config.validate(params);
  const std::size_t n = static_cast<std::size_t>(config.k_max) + 1;
  if (init.size() > n) throw ConfigError("initial distribution wider than k_max");
  {
    double s = 0.0;
    for (double v : init) {
      if (v < 0.0) throw ConfigError("initial distribution must be nonnegative");
      s += v;
    }
    if (std::abs(s - 1.0) > 1e-9) throw ConfigError("initial distribution must sum to 1");
  }

  const auto rates = rate_table(params, config.k_max);
  std::vector<double> p(init);
  p.resize(n, 0.0);

  const auto steps = static_cast<std::int64_t>(std::ceil(config.t_end / config.dt - 1e-9));
  int stride = config.store_stride;
  if (stride <= 0) stride = static_cast<int>(std::max<std::int64_t>(1, steps / 1000));

  MasterEquationGrid grid;
  grid.config = config;
  grid.config.store_stride = stride;
  grid.times.push_back(0.0);
  grid.rows.push_back(p);

  std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);
  double t = 0.0;
  double max_leak = 0.0;
  if (step_observer) step_observer(0.0, p);

  for (std::int64_t step = 1; step <= steps; ++step) {
    const double h = std::min(config.dt, config.t_end - t);
    // classic RK4 on the linear birth system
    derivative(rates, p, k1);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = p[i] + 0.5 * h * k1[i];
    derivative(rates, tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = p[i] + 0.5 * h * k2[i];
    derivative(rates, tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = p[i] + h * k3[i];
    derivative(rates, tmp, k4);
    for (std::size_t i = 0; i < n; ++i)
      p[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    t += h;

    for (std::size_t i = 0; i < n; ++i)
      if (p[i] < 0.0 && p[i] > -1e-12) p[i] = 0.0;

    const double mass = std::accumulate(p.begin(), p.end(), 0.0);
    max_leak = std::max(max_leak, 1.0 - mass);

    if (step_observer) step_observer(t, p);
    if (step % stride == 0 || step == steps) {
      grid.times.push_back(t);
      grid.rows.push_back(p);
    }
  }

  grid.final_leak = 1.0 - std::accumulate(p.begin(), p.end(), 0.0);
  grid.max_leak = max_leak;
  grid.leak_warning = max_leak > config.leak_tolerance;
  return grid;
}

ClosedFormPmf stationary_degree_pmf(const ModelParams& params, const std::vector<double>& init,
                                    const ResidentialTimeSpec& spec,
                                    const MasterEquationConfig& config) {
  if (std::isinf(spec.horizon) || std::abs(spec.horizon - config.t_end) > 1e-9)
    throw ConfigError("residential horizon must equal the integration t_end");

  const std::size_t n = static_cast<std::size_t>(config.k_max) + 1;
  std::vector<double> acc(n, 0.0);
  std::vector<double> prev(n, 0.0);
  double prev_t = 0.0;
  bool have_prev = false;

  auto observer = [&](double t, const std::vector<double>& p) {
    if (have_prev) {
      const double w = 0.5 * (t - prev_t);
      const double f_prev = residential_time_density(prev_t, spec);
      const double f_cur = residential_time_density(t, spec);
      for (std::size_t k = 0; k < n; ++k)
        acc[k] += w * (prev[k] * f_prev + p[k] * f_cur);
    }
    prev = p;
    prev_t = t;
    have_prev = true;
  };

  MasterEquationGrid grid = integrate_degree_dynamics(params, init, config, observer);

  double total = std::accumulate(acc.begin(), acc.end(), 0.0);
  if (!(total > 0.0)) throw ConfigError("quadrature produced an empty distribution");

  ClosedFormPmf pmf;
  pmf.source = PmfSource::MasterEquation;
  pmf.params = params;
  pmf.k_min = 0;
  pmf.k_max = config.k_max;
  pmf.probabilities.resize(n);
  for (std::size_t k = 0; k < n; ++k) pmf.probabilities[k] = acc[k] / total;

  // Keep the support aligned with the reported node set: drop the degree-0
  // bin unless the run actually starts nodes at degree 0.
  if (params.starting_degree >= 1) {
    pmf.k_min = 1;
    pmf.probabilities.erase(pmf.probabilities.begin());
    const double rest = std::accumulate(pmf.probabilities.begin(), pmf.probabilities.end(), 0.0);
    if (rest > 0.0)
      for (double& v : pmf.probabilities) v /= rest;
  }
  return pmf;
}

double self_consistent_residential_rate(const ModelParams& params,
                                        const std::vector<double>& init,
                                        const MasterEquationConfig& config,
                                        double tolerance, int max_iterations) {
  double gamma = params.lower_bound + 0.5;
  if (!params.bounded_above()) gamma = params.lower_bound + 1.0;
  for (int it = 0; it < max_iterations; ++it) {
    const auto spec = ResidentialTimeSpec::with_rate(ResidentialCase::Case3_SmallU,
                                                     params.arrival_rate * gamma, config.t_end);
    const ClosedFormPmf pmf = stationary_degree_pmf(params, init, spec, config);
    double mean_weight = 0.0;
    for (int k = pmf.k_min; k <= pmf.k_max; ++k)
      mean_weight += modified_degree(std::max(k, params.starting_degree), params) * pmf.at(k);
    if (std::abs(mean_weight - gamma) < tolerance) {
      gamma = mean_weight;
      break;
    }
    gamma = mean_weight;
  }
  return params.arrival_rate * gamma;
}

}  // namespace trichonet
