#include "trichonet/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace trichonet {

void SimConfig::validate() const {
  params.validate();
  if (target_size < 2) throw ParamError("target_size must be >= 2");
  if (runs < 1) throw ParamError("runs must be >= 1");
  if (mode == SimMode::PoissonFixedSet) {
    if (fixed_count < 1 || fixed_count >= target_size)
      throw ParamError("fixed_count must be in [1, target_size)");
  }
  if (threads < 0) throw ParamError("threads must be >= 0");
}

std::size_t GrowthState::add_node(int degree) {
  degrees_.push_back(degree);
  weights_.push_back(modified_degree(degree, params_));
  return degrees_.size() - 1;
}

void GrowthState::increment_degree(std::size_t i) {
  degrees_[i] += 1;
  weights_.update(i, modified_degree(degrees_[i], params_));
}

std::size_t GrowthState::sample_attachment_target(Rng& rng) const {
  const std::int64_t total = weights_.total();
  if (total <= 0) throw DomainError("attachment requires positive total weight");
  return weights_.find(static_cast<std::int64_t>(rng.bounded(static_cast<std::uint64_t>(total))));
}

void GrowthState::arrival(Rng& rng) {
  // big-bang connection count
  int m = 1;
  {
    const double u = rng.next_double();
    double acc = 0.0;
    for (std::size_t i = 0; i < params_.init_conn_probs.size(); ++i) {
      acc += params_.init_conn_probs[i];
      if (u < acc) {
        m = static_cast<int>(i) + 1;
        break;
      }
      m = static_cast<int>(params_.init_conn_probs.size());
    }
  }
  m = std::min<int>(m, static_cast<int>(degrees_.size()));

  // distinct targets: zero out each pick, restore afterwards
  picked_.clear();
  for (int c = 0; c < m; ++c) {
    const std::size_t target = sample_attachment_target(rng);
    picked_.push_back(target);
    weights_.update(target, 0);
  }
  for (std::size_t target : picked_) {
    degrees_[target] += 1;
    weights_.update(target, modified_degree(degrees_[target], params_));
  }
  edges_ += m;
  add_node(m);
}

std::int64_t GrowthState::recompute_total_weight() const {
  std::int64_t acc = 0;
  for (int d : degrees_) acc += modified_degree(d, params_);
  return acc;
}

std::vector<int> grow_network(const SimConfig& config, std::uint64_t seed) {
  config.validate();
  Rng rng(seed);
  ModelParams params = config.params;

  if (config.mode == SimMode::PoissonFixedSet) {
    params.starting_degree = 0;
    GrowthState state(params);
    for (std::int64_t i = 0; i < config.fixed_count; ++i) state.add_node(0);
    while (static_cast<std::int64_t>(state.node_count()) < config.target_size)
      state.arrival(rng);
    std::vector<int> fixed(state.degrees().begin(),
                           state.degrees().begin() + config.fixed_count);
    return fixed;
  }

  GrowthState state(params);
  // the smallest viable start: two nodes joined by one edge
  state.add_node(1);
  state.add_node(1);
  while (static_cast<std::int64_t>(state.node_count()) < config.target_size)
    state.arrival(rng);
  return state.degrees();
}

namespace {

std::vector<double> empirical_pmf(const std::vector<int>& degrees, bool exclude_isolated) {
  int k_max = 0;
  for (int d : degrees) k_max = std::max(k_max, d);
  std::vector<std::int64_t> counts(static_cast<std::size_t>(k_max) + 1, 0);
  std::int64_t total = 0;
  for (int d : degrees) {
    if (exclude_isolated && d == 0) continue;
    counts[static_cast<std::size_t>(d)] += 1;
    total += 1;
  }
  std::vector<double> pmf(counts.size(), 0.0);
  if (total > 0)
    for (std::size_t k = 0; k < counts.size(); ++k)
      pmf[k] = static_cast<double>(counts[k]) / static_cast<double>(total);
  return pmf;
}

}  // namespace

EnsemblePmf run_ensemble(const SimConfig& config) {
  config.validate();
  const int runs = config.runs;
  std::vector<std::vector<double>> per_run(static_cast<std::size_t>(runs));

  int workers = config.threads;
  if (workers <= 0) {
    workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers <= 0) workers = 1;
  }
  workers = std::min(workers, runs);

  std::atomic<int> next{0};
  auto body = [&]() {
    for (;;) {
      const int r = next.fetch_add(1);
      if (r >= runs) return;
      const std::uint64_t seed = derive_seed(config.rng_seed, static_cast<std::uint64_t>(r));
      per_run[static_cast<std::size_t>(r)] =
          empirical_pmf(grow_network(config, seed), config.exclude_isolated);
    }
  };
  if (workers <= 1) {
    body();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(body);
    for (auto& t : pool) t.join();
  }

  std::size_t width = 0;
  for (const auto& pmf : per_run) width = std::max(width, pmf.size());

  EnsemblePmf out;
  out.k_min = 0;
  out.runs = runs;
  out.mean_pmf.assign(width, 0.0);
  out.per_bin_variance.assign(width, 0.0);
  for (const auto& pmf : per_run)
    for (std::size_t k = 0; k < width; ++k)
      out.mean_pmf[k] += (k < pmf.size() ? pmf[k] : 0.0);
  for (double& v : out.mean_pmf) v /= runs;
  if (config.record_tail_variance && runs > 1) {
    for (const auto& pmf : per_run)
      for (std::size_t k = 0; k < width; ++k) {
        const double d = (k < pmf.size() ? pmf[k] : 0.0) - out.mean_pmf[k];
        out.per_bin_variance[k] += d * d;
      }
    for (double& v : out.per_bin_variance) v /= runs;
  }

  // trim leading zero bins (degree 0 unused outside fixed-set mode)
  std::size_t lead = 0;
  while (lead + 1 < width && out.mean_pmf[lead] == 0.0 && out.per_bin_variance[lead] == 0.0)
    ++lead;
  if (lead > 0) {
    out.mean_pmf.erase(out.mean_pmf.begin(), out.mean_pmf.begin() + static_cast<std::ptrdiff_t>(lead));
    out.per_bin_variance.erase(out.per_bin_variance.begin(),
                               out.per_bin_variance.begin() + static_cast<std::ptrdiff_t>(lead));
    out.k_min = static_cast<int>(lead);
  }
  return out;
}

}  // namespace trichonet
