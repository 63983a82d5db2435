#include "trichonet/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "trichonet/closed_form.hpp"

#include "doctest.h"

using namespace trichonet;

namespace {

SimConfig base_config(int L, int LL, std::optional<int> U, std::optional<int> UU,
                      std::int64_t n, int runs, std::uint64_t seed) {
  SimConfig cfg;
  cfg.params.lower_bound = L;
  cfg.params.lower_threshold = LL;
  cfg.params.upper_bound = U;
  cfg.params.upper_threshold = UU;
  cfg.target_size = n;
  cfg.runs = runs;
  cfg.rng_seed = seed;
  return cfg;
}

double tv_to_geometric_half(const EnsemblePmf& pmf) {
  double acc = 0.0;
  const int hi = pmf.k_min + static_cast<int>(pmf.mean_pmf.size()) + 60;
  for (int k = 1; k <= hi; ++k)
    acc += std::abs(pmf.mean_at(k) - std::exp2(-static_cast<double>(k)));
  return 0.5 * acc;
}

}  // namespace

TEST_CASE("three-node network is the chain plus one attachment") {
  const auto cfg = base_config(1, 1, 1, 1, 3, 1, 42);
  auto degrees = grow_network(cfg, 7);
  REQUIRE(degrees.size() == 3);
  const int sum = std::accumulate(degrees.begin(), degrees.end(), 0);
  CHECK(sum == 4);  // two edges
  std::sort(degrees.begin(), degrees.end());
  CHECK(degrees == std::vector<int>{1, 1, 2});
}

TEST_CASE("attachment target frequencies follow the modified-degree weights") {
  ModelParams params = ModelParams::unbounded(1);
  Rng rng(123);

  SUBCASE("equal weights") {
    GrowthState state(params);
    state.add_node(2);
    state.add_node(2);
    int first = 0;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i)
      if (state.sample_attachment_target(rng) == 0) ++first;
    CHECK(std::abs(first / static_cast<double>(draws) - 0.5) < 0.01);
  }

  SUBCASE("3:1 weights") {
    GrowthState state(params);
    state.add_node(1);
    state.add_node(3);
    int second = 0;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i)
      if (state.sample_attachment_target(rng) == 1) ++second;
    CHECK(std::abs(second / static_cast<double>(draws) - 0.75) < 0.01);
  }

  SUBCASE("single node") {
    GrowthState state(params);
    state.add_node(5);
    for (int i = 0; i < 100; ++i) CHECK(state.sample_attachment_target(rng) == 0);
  }
}

TEST_CASE("prefix-sum weights stay consistent with the degree sequence") {
  SimConfig cfg = base_config(2, 2, 8, 8, 2, 1, 0);
  cfg.params.init_conn_probs = {0.6, 0.3, 0.1};
  GrowthState state(cfg.params);
  state.add_node(1);
  state.add_node(1);
  Rng rng(99);
  for (int arrivals = 0; arrivals < 5000; ++arrivals) {
    state.arrival(rng);
    if (arrivals % 1000 == 999)
      CHECK(state.total_modified_weight() == state.recompute_total_weight());
  }
  CHECK(state.total_modified_weight() == state.recompute_total_weight());

  // degree sum counts every edge twice
  const auto& degrees = state.degrees();
  const std::int64_t sum = std::accumulate(degrees.begin(), degrees.end(), std::int64_t{0});
  CHECK(sum == 2 * state.edge_count());
}

TEST_CASE("collapsed bounds reproduce the geometric degree law") {
  auto cfg = base_config(1, 1, 1, 1, 20000, 20, 2024);
  cfg.exclude_isolated = true;
  const auto pmf = run_ensemble(cfg);
  CHECK(tv_to_geometric_half(pmf) <= 0.02);
}

TEST_CASE("unbounded preferential attachment yields the cubic power law") {
  auto cfg = base_config(1, 1, std::nullopt, std::nullopt, 100000, 1, 5);
  const auto degrees = grow_network(cfg, derive_seed(cfg.rng_seed, 0));
  int k_max = 0;
  std::vector<std::int64_t> counts(2048, 0);
  for (int d : degrees) {
    if (d < static_cast<int>(counts.size())) counts[static_cast<std::size_t>(d)] += 1;
    k_max = std::max(k_max, d);
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (int k = 5; k <= 50; ++k) {
    if (counts[static_cast<std::size_t>(k)] == 0) continue;
    const double x = std::log(k);
    const double y = std::log(counts[static_cast<std::size_t>(k)] / 100000.0);
    sx += x, sy += y, sxx += x * x, sxy += x * y;
    ++n;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  CHECK(slope == doctest::Approx(-3.0).epsilon(0.1));  // within +-0.3
}

TEST_CASE("ensembles are deterministic in the seed") {
  const auto cfg = base_config(2, 2, 8, 8, 3000, 4, 77);
  const auto a = run_ensemble(cfg);
  const auto b = run_ensemble(cfg);
  REQUIRE(a.mean_pmf.size() == b.mean_pmf.size());
  for (std::size_t i = 0; i < a.mean_pmf.size(); ++i) {
    CHECK(a.mean_pmf[i] == b.mean_pmf[i]);
    CHECK(a.per_bin_variance[i] == b.per_bin_variance[i]);
  }

  auto threaded = cfg;
  threaded.threads = 4;
  const auto c = run_ensemble(threaded);
  for (std::size_t i = 0; i < a.mean_pmf.size(); ++i) CHECK(a.mean_pmf[i] == c.mean_pmf[i]);
}

TEST_CASE("single-run ensembles report zero variance") {
  const auto cfg = base_config(1, 1, 4, 4, 2000, 1, 3);
  const auto pmf = run_ensemble(cfg);
  for (double v : pmf.per_bin_variance) CHECK(v == 0.0);
}

TEST_CASE("looser upper bounds amplify tail variance") {
  auto tight = base_config(3, 3, 10, 10, 20000, 10, 31337);
  auto loose = base_config(3, 3, 20000, 20000, 20000, 10, 31337);
  const auto pmf_tight = run_ensemble(tight);
  const auto pmf_loose = run_ensemble(loose);

  auto top_decile_variance = [](const EnsemblePmf& pmf) {
    std::vector<std::size_t> occupied;
    for (std::size_t i = 0; i < pmf.mean_pmf.size(); ++i)
      if (pmf.mean_pmf[i] > 0.0) occupied.push_back(i);
    const std::size_t start = occupied.size() - std::max<std::size_t>(1, occupied.size() / 10);
    double acc = 0.0;
    std::size_t n = 0;
    for (std::size_t j = start; j < occupied.size(); ++j, ++n)
      acc += pmf.per_bin_variance[occupied[j]];
    return acc / static_cast<double>(n);
  };

  CHECK(top_decile_variance(pmf_loose) > top_decile_variance(pmf_tight));
}

TEST_CASE("poisson fixed-set mode reports only the pre-populated nodes") {
  SimConfig cfg = base_config(1, 1, 1, 1, 4000, 1, 11);
  cfg.mode = SimMode::PoissonFixedSet;
  cfg.fixed_count = 2000;
  const auto degrees = grow_network(cfg, derive_seed(cfg.rng_seed, 0));
  REQUIRE(degrees.size() == 2000);

  // the fixed-set degree distribution approaches Poisson(mean)
  const double mean = std::accumulate(degrees.begin(), degrees.end(), 0.0) / 2000.0;
  std::vector<double> pmf(32, 0.0);
  for (int d : degrees)
    if (d < 32) pmf[static_cast<std::size_t>(d)] += 1.0 / 2000.0;
  double tv = 0.0;
  for (int k = 0; k < 32; ++k) tv += std::abs(pmf[static_cast<std::size_t>(k)] - poisson_network_pmf(k, mean));
  CHECK(0.5 * tv < 0.05);
}

TEST_CASE("multi-connection arrivals attach to distinct targets") {
  SimConfig cfg = base_config(3, 3, std::nullopt, std::nullopt, 3, 1, 5);
  cfg.params.init_conn_probs = {0.0, 0.0, 0.0, 1.0};  // always 4 connections
  const auto degrees = grow_network(cfg, 123);
  // arrival clamps to the 2 available targets; both must gain exactly one edge
  REQUIRE(degrees.size() == 3);
  CHECK(degrees[0] == 2);
  CHECK(degrees[1] == 2);
  CHECK(degrees[2] == 2);
}

TEST_CASE("configuration validation") {
  auto cfg = base_config(2, 2, 8, 8, 1, 1, 0);
  CHECK_THROWS_AS(cfg.validate(), ParamError);  // target too small
  cfg = base_config(2, 2, 8, 8, 100, 0, 0);
  CHECK_THROWS_AS(cfg.validate(), ParamError);  // no runs
  cfg = base_config(2, 2, 8, 8, 100, 1, 0);
  cfg.mode = SimMode::PoissonFixedSet;
  cfg.fixed_count = 100;
  CHECK_THROWS_AS(cfg.validate(), ParamError);  // fixed set not below target
  cfg.fixed_count = 50;
  CHECK_NOTHROW(cfg.validate());
}
