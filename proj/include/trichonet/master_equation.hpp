#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "trichonet/closed_form.hpp"
#include "trichonet/model.hpp"

namespace trichonet {

// Grid for the explicit fixed-step integration of the one-dimensional
// degree dynamics. Stability requires dt * lambda * max_rate <= 0.1 where
// max_rate is the largest modified degree representable on the grid.
struct MasterEquationConfig {
  int k_max = 0;        // truncation of the degree support
  double dt = 0.0;
  double t_end = 0.0;
  int store_stride = 0;  // 0 = choose so that ~1000 rows are kept
  double leak_tolerance = 1e-4;

  void validate(const ModelParams& params) const;
  int effective_max_rate(const ModelParams& params) const;
};

// Time-indexed degree distribution of a single node. Rows are stored every
// store_stride steps plus the final state; sum deficits measure the
// probability flux lost past k_max.
struct MasterEquationGrid {
  MasterEquationConfig config;
  std::vector<double> times;
  std::vector<std::vector<double>> rows;  // rows[i][k] = p_k(times[i]), k from 0
  double final_leak = 0.0;
  double max_leak = 0.0;
  bool leak_warning = false;

  const std::vector<double>& final_row() const { return rows.back(); }
  double final_time() const { return times.back(); }
};

// Integrates dp_k/dt = lambda * (khat(k-1) p_{k-1} - khat(k) p_k) forward
// from the given initial distribution (index = degree, starting at 0).
// step_observer, when set, is called after every internal step with
// (t, state); the state spans degrees 0..k_max.
MasterEquationGrid integrate_degree_dynamics(
    const ModelParams& params, const std::vector<double>& init,
    const MasterEquationConfig& config,
    const std::function<void(double, const std::vector<double>&)>& step_observer = {});

// Expected degree distribution of a random node: the time-dependent pmf
// averaged against the residential-time density by trapezoidal quadrature
// on the integration grid, then normalized.
ClosedFormPmf stationary_degree_pmf(const ModelParams& params, const std::vector<double>& init,
                                    const ResidentialTimeSpec& spec,
                                    const MasterEquationConfig& config);

// Self-consistent residential rate for regimes between the closed-form
// cases: iterates rate -> lambda * E[modified degree] under the stationary
// pmf until the fixed point. Returns the rate (lambda * gamma_effective).
double self_consistent_residential_rate(const ModelParams& params,
                                        const std::vector<double>& init,
                                        const MasterEquationConfig& config,
                                        double tolerance = 1e-4, int max_iterations = 12);

}  // namespace trichonet
