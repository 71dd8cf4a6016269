#pragma once

#include <cstdint>
#include <vector>

#include "core/network.hpp"
#include "core/rng.hpp"

namespace sewerplace {

/// Probability distribution over a node's immediate-upstream child count
/// {0, 1, ..., k_max}. Probabilities must be non-negative and sum to 1
/// within 1e-9.
class BranchingDistribution {
 public:
  explicit BranchingDistribution(std::vector<double> probabilities);

  const std::vector<double>& probabilities() const noexcept { return probabilities_; }
  std::uint32_t max_children() const noexcept {
    return static_cast<std::uint32_t>(probabilities_.size()) - 1;
  }
  double mean() const;

  /// Draw one child count by CDF inversion on a single uniform variate.
  std::uint32_t sample(Rng& rng) const;

 private:
  std::vector<double> probabilities_;
};

/// Stand-in branching probabilities used when nothing real is available to
/// fit from: P(0)=0.5, P(1)=0.3, P(2)=0.15, P(3)=0.05.
BranchingDistribution default_branching_distribution();

struct SynthConfig {
  std::uint32_t n = 1;  // target node count, >= 1
  std::uint64_t seed = 0;
  BranchingDistribution distribution = default_branching_distribution();
};

/// Monte Carlo in-tree: grown breadth-first from the root (the outfall),
/// sampling each frontier node's upstream child count, truncating the final
/// layer once n nodes exist and padding a died-out layer with one forced
/// child so growth can continue. Node labels are "n0" (root) .. "n{n-1}" in
/// creation order. Throws "cannot grow" when P(0)=1 and n>1.
SewerNetwork generate_intree(const SynthConfig& cfg);

/// Empirical histogram of immediate-upstream counts (flow in-degrees),
/// normalized over all nodes.
BranchingDistribution fit_branching_distribution(const SewerNetwork& net);

}  // namespace sewerplace
