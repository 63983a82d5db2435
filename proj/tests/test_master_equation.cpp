#include "trichonet/master_equation.hpp"

#include <cmath>
#include <numeric>

#include "doctest.h"

using namespace trichonet;

namespace {

ModelParams make(int L, int LL, std::optional<int> U, std::optional<int> UU) {
  ModelParams p;
  p.lower_bound = L;
  p.lower_threshold = LL;
  p.upper_bound = U;
  p.upper_threshold = UU;
  return p;
}

std::vector<double> delta_at(int k, int width) {
  std::vector<double> init(static_cast<std::size_t>(width), 0.0);
  init[static_cast<std::size_t>(k)] = 1.0;
  return init;
}

double tv_distance(const ClosedFormPmf& pmf, const std::vector<double>& reference, int ref_k_min) {
  double acc = 0.0;
  const int lo = std::min(pmf.k_min, ref_k_min);
  const int hi = std::max(pmf.k_max, ref_k_min + static_cast<int>(reference.size()) - 1);
  for (int k = lo; k <= hi; ++k) {
    const double a = (k >= pmf.k_min && k <= pmf.k_max) ? pmf.at(k) : 0.0;
    const int ri = k - ref_k_min;
    const double b = (ri >= 0 && ri < static_cast<int>(reference.size()))
                         ? reference[static_cast<std::size_t>(ri)]
                         : 0.0;
    acc += std::abs(a - b);
  }
  return 0.5 * acc;
}

}  // namespace

TEST_CASE("collapsed bounds integrate to the shifted poisson solution") {
  const ModelParams p = ModelParams::collapsed(1);
  MasterEquationConfig cfg{.k_max = 60, .dt = 0.05, .t_end = 3.0};
  const auto grid = integrate_degree_dynamics(p, delta_at(1, 61), cfg);
  const auto& final = grid.final_row();
  // p_k(t) = (t)^{k-1} e^{-t} / (k-1)! at lambda L = 1
  for (int k = 1; k <= 12; ++k) {
    const double expected = std::exp((k - 1) * std::log(3.0) - 3.0 - std::lgamma(k));
    CHECK(final[static_cast<std::size_t>(k)] == doctest::Approx(expected).epsilon(1e-6));
  }
  CHECK(final[1] == doctest::Approx(std::exp(-3.0)).epsilon(1e-6));
}

TEST_CASE("initial condition is reproduced exactly at t = 0") {
  const ModelParams p = make(1, 2, 10, 9);
  MasterEquationConfig cfg{.k_max = 60, .dt = 0.01, .t_end = 1.0};
  const auto init = delta_at(2, 61);
  const auto grid = integrate_degree_dynamics(p, init, cfg);
  CHECK(grid.times.front() == 0.0);
  for (std::size_t k = 0; k < init.size(); ++k) CHECK(grid.rows.front()[k] == init[k]);
}

TEST_CASE("unbounded growth follows the pure-birth solution") {
  const ModelParams p = ModelParams::unbounded(1);
  MasterEquationConfig cfg{.k_max = 220, .dt = 0.1 / 220, .t_end = 1.0};
  const auto grid = integrate_degree_dynamics(p, delta_at(1, 221), cfg);
  const double e1 = std::exp(-1.0);
  CHECK(grid.final_row()[2] == doctest::Approx(e1 * (1.0 - e1)).epsilon(1e-5));
  CHECK(grid.final_row()[1] == doctest::Approx(e1).epsilon(1e-5));
}

TEST_CASE("probability is conserved up to monitored leak") {
  const ModelParams p = make(2, 2, 8, 8);
  MasterEquationConfig cfg{.k_max = 80, .dt = 0.01, .t_end = 8.0};
  const auto grid = integrate_degree_dynamics(p, delta_at(1, 81), cfg);
  for (const auto& row : grid.rows) {
    const double mass = std::accumulate(row.begin(), row.end(), 0.0);
    CHECK(mass <= 1.0 + 1e-9);
    CHECK(mass >= 1.0 - grid.max_leak - 1e-6);
  }
  CHECK(grid.max_leak < 1e-8);  // tail far from k_max at this horizon
}

TEST_CASE("degrees never decrease: no mass below the initial support") {
  const ModelParams p = make(1, 3, 20, 15);
  MasterEquationConfig cfg{.k_max = 70, .dt = 0.005, .t_end = 2.0};
  const auto grid = integrate_degree_dynamics(p, delta_at(3, 71), cfg);
  for (const auto& row : grid.rows) {
    CHECK(row[1] == 0.0);
    CHECK(row[2] == 0.0);
  }
}

TEST_CASE("halving dt changes the final row by less than 1e-5") {
  const ModelParams p = make(2, 2, 8, 8);
  MasterEquationConfig coarse{.k_max = 70, .dt = 0.0125, .t_end = 5.0};
  MasterEquationConfig fine{.k_max = 70, .dt = 0.00625, .t_end = 5.0};
  const auto a = integrate_degree_dynamics(p, delta_at(1, 71), coarse);
  const auto b = integrate_degree_dynamics(p, delta_at(1, 71), fine);
  for (std::size_t k = 0; k < a.final_row().size(); ++k)
    CHECK(std::abs(a.final_row()[k] - b.final_row()[k]) < 1e-5);
}

TEST_CASE("configuration errors") {
  const ModelParams p = make(2, 2, 8, 8);
  MasterEquationConfig unstable{.k_max = 80, .dt = 0.5, .t_end = 2.0};
  CHECK_THROWS_AS(integrate_degree_dynamics(p, delta_at(1, 81), unstable), ConfigError);

  MasterEquationConfig small{.k_max = 20, .dt = 0.01, .t_end = 2.0};
  CHECK_THROWS_AS(integrate_degree_dynamics(p, delta_at(1, 21), small), ConfigError);

  MasterEquationConfig ok{.k_max = 80, .dt = 0.01, .t_end = 2.0};
  std::vector<double> bad_init(81, 0.0);
  bad_init[1] = 0.7;
  CHECK_THROWS_AS(integrate_degree_dynamics(p, bad_init, ok), ConfigError);

  const auto spec = ResidentialTimeSpec::case3(1.0, 2, 3.0);
  CHECK_THROWS_AS(stationary_degree_pmf(p, delta_at(1, 81), spec, ok), ConfigError);
}

TEST_CASE("leak warning fires when the support is too small for the horizon") {
  const ModelParams p = ModelParams::unbounded(1);
  MasterEquationConfig cfg{.k_max = 200, .dt = 0.1 / 200, .t_end = 8.0, .leak_tolerance = 1e-6};
  const auto grid = integrate_degree_dynamics(p, delta_at(1, 201), cfg);
  CHECK(grid.leak_warning);
  CHECK(grid.max_leak > 1e-6);
}

TEST_CASE("stationary pmf reproduces the geometric closed form") {
  const ModelParams p = ModelParams::collapsed(1);
  MasterEquationConfig cfg{.k_max = 80, .dt = 0.0125, .t_end = 16.0};
  const auto spec = ResidentialTimeSpec::case3(1.0, 1, 16.0);
  const auto pmf = stationary_degree_pmf(p, delta_at(1, 81), spec, cfg);
  std::vector<double> geom;
  for (int k = 1; k <= 80; ++k) geom.push_back(std::exp2(-static_cast<double>(k)));
  CHECK(tv_distance(pmf, geom, 1) < 0.005);
}

TEST_CASE("stationary pmf reproduces the BA closed form") {
  const ModelParams p = ModelParams::unbounded(1);
  MasterEquationConfig cfg{.k_max = 300, .dt = 0.1 / 300, .t_end = 14.0};
  const auto spec = ResidentialTimeSpec::case1(1.0, 14.0);
  const auto pmf = stationary_degree_pmf(p, delta_at(1, 301), spec, cfg);
  std::vector<double> ba;
  for (int k = 1; k <= 300; ++k) ba.push_back(ba_power_law_pmf(k));
  CHECK(tv_distance(pmf, ba, 1) < 0.005);
}

TEST_CASE("stationary pmf pins the effective exponent of the bounded regime") {
  const ModelParams p = make(2, 2, 8, 8);
  MasterEquationConfig cfg{.k_max = 80, .dt = 0.0125, .t_end = 14.0};
  const auto spec = ResidentialTimeSpec::case3(1.0, 2, 14.0);
  const auto pmf = stationary_degree_pmf(p, delta_at(1, 81), spec, cfg);

  double best_tv = 1.0;
  double best_gamma = 0.0;
  for (double g = 2.0; g <= 3.0 + 1e-9; g += 0.02) {
    TrichotomyEvaluator eval(p, g, 100000);
    std::vector<double> closed;
    for (int k = 1; k <= 80; ++k) closed.push_back(eval(k));
    const double tv = tv_distance(pmf, closed, 1);
    if (tv < best_tv) {
      best_tv = tv;
      best_gamma = g;
    }
  }
  CHECK(best_tv < 0.02);
  // the case-3 residential rate lambda*L corresponds to gamma = L
  CHECK(best_gamma == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("self-consistent residential rate lands between the asymptotic cases") {
  const ModelParams p = make(2, 2, 8, 8);
  MasterEquationConfig cfg{.k_max = 80, .dt = 0.0125, .t_end = 14.0};
  const double rate = self_consistent_residential_rate(p, delta_at(1, 81), cfg);
  CHECK(rate > 2.0);   // above lambda * L
  CHECK(rate < 3.0);   // below lambda * (L + 1)
}
