#pragma once

#include <cstdint>
#include <vector>

#include "trichonet/model.hpp"
#include "trichonet/rng.hpp"
#include "trichonet/weighted_index.hpp"

namespace trichonet {

enum class SimMode {
  Standard,         // grow from the two-node chain, report every node
  PoissonFixedSet,  // pre-populate isolated nodes, report only those
};

struct SimConfig {
  ModelParams params;
  std::int64_t target_size = 0;   // number of nodes when the run stops
  int runs = 1;                   // ensemble size M
  SimMode mode = SimMode::Standard;
  std::int64_t fixed_count = 0;   // PoissonFixedSet only
  std::uint64_t rng_seed = 0;
  bool exclude_isolated = false;  // drop degree-0 nodes from the reported pmf
  bool record_tail_variance = true;
  int threads = 0;                // 0 = pick automatically

  void validate() const;
};

// Evolving degree sequence plus the prefix-sum weight structure over
// modified degrees. The structure's total is the attachment normalizer.
class GrowthState {
 public:
  explicit GrowthState(const ModelParams& params) : params_(params) {}

  std::size_t node_count() const { return degrees_.size(); }
  std::int64_t total_modified_weight() const { return weights_.total(); }
  std::int64_t edge_count() const { return edges_; }
  int degree(std::size_t i) const { return degrees_[i]; }
  const std::vector<int>& degrees() const { return degrees_; }

  std::size_t add_node(int degree);
  void increment_degree(std::size_t i);

  // Node index drawn with probability modified_degree / total weight.
  std::size_t sample_attachment_target(Rng& rng) const;

  // One arrival: draws the connection count from init_conn_probs, attaches
  // to that many distinct targets, and registers the new node.
  void arrival(Rng& rng);

  // Re-derives the total weight from the degree sequence (test hook for
  // the prefix-sum consistency invariant).
  std::int64_t recompute_total_weight() const;

 private:
  ModelParams params_;
  std::vector<int> degrees_;
  WeightedIndex weights_;
  std::int64_t edges_ = 0;
  // scratch for without-replacement draws
  mutable std::vector<std::size_t> picked_;
};

// Empirical pmf averaged across an ensemble of independent runs.
struct EnsemblePmf {
  int k_min = 0;
  std::vector<double> mean_pmf;          // index i -> degree k_min + i
  std::vector<double> per_bin_variance;  // cross-run, population form
  int runs = 0;

  double mean_at(int k) const {
    const std::int64_t i = k - k_min;
    if (i < 0 || i >= static_cast<std::int64_t>(mean_pmf.size())) return 0.0;
    return mean_pmf[static_cast<std::size_t>(i)];
  }
};

// Final degree sequence of one run (the reported node set only).
std::vector<int> grow_network(const SimConfig& config, std::uint64_t seed);

EnsemblePmf run_ensemble(const SimConfig& config);

}  // namespace trichonet
