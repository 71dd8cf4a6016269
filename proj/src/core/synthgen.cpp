#include "core/synthgen.hpp"

#include <cmath>
#include <string>

#include "core/error.hpp"

namespace sewerplace {

BranchingDistribution::BranchingDistribution(std::vector<double> probabilities)
    : probabilities_(std::move(probabilities)) {
  if (probabilities_.empty())
    fail(ErrorKind::invalid_argument, "branching distribution must not be empty");
  double sum = 0.0;
  for (double p : probabilities_) {
    if (!std::isfinite(p) || p < 0.0)
      fail(ErrorKind::invalid_argument, "branching probabilities must be finite and non-negative");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    fail(ErrorKind::invalid_argument,
         "branching probabilities must sum to 1 (got " + std::to_string(sum) + ")");
}

double BranchingDistribution::mean() const {
  double m = 0.0;
  for (std::size_t k = 0; k < probabilities_.size(); ++k)
    m += static_cast<double>(k) * probabilities_[k];
  return m;
}

std::uint32_t BranchingDistribution::sample(Rng& rng) const {
  const double u = rng.next_double();
  double cum = 0.0;
  for (std::size_t k = 0; k < probabilities_.size(); ++k) {
    cum += probabilities_[k];
    if (u < cum) return static_cast<std::uint32_t>(k);
  }
  return max_children();  // guard against accumulated rounding
}

BranchingDistribution default_branching_distribution() {
  return BranchingDistribution({0.5, 0.3, 0.15, 0.05});
}

SewerNetwork generate_intree(const SynthConfig& cfg) {
  if (cfg.n == 0) fail(ErrorKind::invalid_argument, "target node count must be at least 1");
  if (cfg.n > 1 && cfg.distribution.probabilities()[0] >= 1.0 - 1e-12)
    fail(ErrorKind::invalid_argument,
         "cannot grow: branching distribution never produces children");

  std::vector<FlowEdge> edges;
  edges.reserve(cfg.n > 0 ? cfg.n - 1 : 0);
  Rng rng(cfg.seed);

  std::uint32_t created = 1;  // node 0 is the root (outfall)
  std::vector<NodeId> frontier{0};
  while (created < cfg.n && !frontier.empty()) {
    std::vector<NodeId> next_frontier;
    for (NodeId parent : frontier) {
      if (created == cfg.n) break;  // truncate: drop unexpanded frontier nodes
      const std::uint32_t children = cfg.distribution.sample(rng);
      for (std::uint32_t c = 0; c < children && created < cfg.n; ++c) {
        const NodeId child = created++;
        edges.push_back(FlowEdge{child, parent});  // flow child -> parent
        next_frontier.push_back(child);
      }
    }
    if (created < cfg.n && next_frontier.empty()) {
      // Layer died out before reaching n: force one child so growth resumes.
      const NodeId child = created++;
      edges.push_back(FlowEdge{child, frontier.front()});
      next_frontier.push_back(child);
    }
    frontier = std::move(next_frontier);
  }

  std::vector<std::string> labels;
  labels.reserve(cfg.n);
  for (std::uint32_t v = 0; v < cfg.n; ++v) labels.push_back("n" + std::to_string(v));
  return SewerNetwork::from_parts(cfg.n, std::move(edges), std::move(labels));
}

BranchingDistribution fit_branching_distribution(const SewerNetwork& net) {
  if (net.node_count() == 0)
    fail(ErrorKind::invalid_argument, "cannot fit a distribution to an empty network");
  std::vector<std::uint64_t> indegree(net.node_count(), 0);
  for (const FlowEdge& e : net.edges()) ++indegree[e.to];

  std::uint64_t k_max = 0;
  for (std::uint64_t d : indegree) k_max = std::max(k_max, d);
  std::vector<double> counts(k_max + 1, 0.0);
  for (std::uint64_t d : indegree) counts[d] += 1.0;
  for (double& c : counts) c /= static_cast<double>(net.node_count());
  return BranchingDistribution(std::move(counts));
}

}  // namespace sewerplace
