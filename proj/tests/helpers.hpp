#pragma once

// Shared fixtures and naive reference implementations. The naive versions
// are deliberately simple (set-based BFS, double loops) so disagreements
// with the optimized library code point at the library.

#include <algorithm>
#include <cstdint>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "core/network.hpp"
#include "core/objectives.hpp"
#include "core/pareto.hpp"
#include "core/rng.hpp"
#include "core/types.hpp"
#include "core/upstream_index.hpp"

namespace testutil {

using namespace sewerplace;

/// Network from labeled edges; node ids follow the label list order.
inline SewerNetwork from_edges(const std::vector<std::string>& labels,
                               const std::vector<std::pair<std::string, std::string>>& edges) {
  std::ostringstream nodes_csv;
  nodes_csv << "id\n";
  for (const auto& l : labels) {
    nodes_csv << l << "\n";
  }
  std::ostringstream edges_csv;
  edges_csv << "from,to\n";
  for (const auto& [f, t] : edges) {
    edges_csv << f << "," << t << "\n";
  }
  std::istringstream ns(nodes_csv.str());
  std::istringstream es(edges_csv.str());
  return parse_network_streams(ns, "nodes.csv", es, "edges.csv");
}

/// a -> b -> c (ids 0, 1, 2).
inline SewerNetwork path3() {
  return from_edges({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
}

/// a -> c, b -> c, c -> d (ids 0..3).
inline SewerNetwork confluence() {
  return from_edges({"a", "b", "c", "d"}, {{"a", "c"}, {"b", "c"}, {"c", "d"}});
}

/// Uniform random recursive in-tree: node 0 is the outfall, every later node
/// drains into a uniformly chosen earlier node. Always a valid single-root
/// in-tree.
inline SewerNetwork random_intree(std::uint32_t n, Rng& rng) {
  std::vector<FlowEdge> edges;
  edges.reserve(n > 0 ? n - 1 : 0);
  for (NodeId v = 1; v < n; ++v) {
    auto parent = static_cast<NodeId>(rng.next_below(v));
    edges.push_back(FlowEdge{v, parent});
  }
  return SewerNetwork::from_parts(n, std::move(edges));
}

/// Strict ancestor sets by per-node reverse BFS over the edge list.
inline std::vector<std::set<NodeId>> naive_upstream_sets(const SewerNetwork& net) {
  const auto n = net.node_count();
  std::vector<std::vector<NodeId>> parents(n);  // immediate upstream neighbors
  for (const auto& e : net.edges()) {
    parents[e.to].push_back(e.from);
  }
  std::vector<std::set<NodeId>> up(n);
  for (NodeId i = 0; i < n; ++i) {
    std::vector<NodeId> stack = parents[i];
    while (!stack.empty()) {
      NodeId j = stack.back();
      stack.pop_back();
      if (up[i].insert(j).second) {
        stack.insert(stack.end(), parents[j].begin(), parents[j].end());
      }
    }
  }
  return up;
}

/// Coverage as an explicit union of upstream closures.
inline std::uint32_t naive_coverage(const PlacementPlan& plan, const SewerNetwork& net) {
  auto up = naive_upstream_sets(net);
  std::set<NodeId> covered;
  for (NodeId s : plan.sensors()) {
    covered.insert(s);
    covered.insert(up[s].begin(), up[s].end());
  }
  return static_cast<std::uint32_t>(covered.size());
}

/// Owning sensor per node by walking downstream until the first sensor.
inline std::vector<NodeId> naive_assignment(const PlacementPlan& plan, const SewerNetwork& net) {
  const auto n = net.node_count();
  std::vector<NodeId> down(n, kNoNode);
  for (const auto& e : net.edges()) {
    down[e.from] = e.to;
  }
  std::vector<NodeId> owner(n, kNoNode);
  for (NodeId v = 0; v < n; ++v) {
    for (NodeId cur = v; cur != kNoNode; cur = down[cur]) {
      if (plan.contains(cur)) {
        owner[v] = cur;
        break;
      }
    }
  }
  return owner;
}

/// Indices of the non-dominated points by the O(N^2) double loop.
inline std::vector<std::size_t> naive_front(const std::vector<ObjectiveVector>& points) {
  std::vector<std::size_t> front;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < points.size() && !dominated; ++j) {
      dominated = j != i && dominates(points[j], points[i]);
    }
    if (!dominated) {
      front.push_back(i);
    }
  }
  return front;
}

/// Front rank per point by repeated peeling with the naive front.
inline std::vector<std::size_t> naive_ranks(const std::vector<ObjectiveVector>& points) {
  std::vector<std::size_t> rank(points.size(), 0);
  std::vector<std::size_t> remaining(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    remaining[i] = i;
  }
  std::size_t level = 0;
  while (!remaining.empty()) {
    std::vector<std::size_t> peeled;
    for (std::size_t idx : remaining) {
      bool dominated = false;
      for (std::size_t other : remaining) {
        if (other != idx && dominates(points[other], points[idx])) {
          dominated = true;
          break;
        }
      }
      if (!dominated) {
        peeled.push_back(idx);
      }
    }
    std::vector<std::size_t> next;
    std::set<std::size_t> peeled_set(peeled.begin(), peeled.end());
    for (std::size_t idx : remaining) {
      if (peeled_set.count(idx) == 0) {
        next.push_back(idx);
      } else {
        rank[idx] = level;
      }
    }
    remaining = std::move(next);
    ++level;
  }
  return rank;
}

/// Exact Pareto-front objective vectors over all S-subsets, naive evaluation.
inline std::vector<ObjectiveVector> naive_pareto_vectors(const SewerNetwork& net,
                                                         const UpstreamIndex& idx,
                                                         std::uint32_t budget) {
  const auto n = net.node_count();
  std::vector<NodeId> combo(budget);
  for (std::uint32_t k = 0; k < budget; ++k) {
    combo[k] = k;
  }
  std::vector<ObjectiveVector> all;
  while (true) {
    all.push_back(evaluate_plan(PlacementPlan(std::vector<NodeId>(combo)), idx));
    // next lexicographic combination
    std::int64_t pos = static_cast<std::int64_t>(budget) - 1;
    while (pos >= 0 && combo[pos] == n - budget + pos) {
      --pos;
    }
    if (pos < 0) {
      break;
    }
    ++combo[pos];
    for (auto k = static_cast<std::uint32_t>(pos) + 1; k < budget; ++k) {
      combo[k] = combo[k - 1] + 1;
    }
  }
  std::vector<ObjectiveVector> front;
  for (auto i : naive_front(all)) {
    front.push_back(all[i]);
  }
  std::sort(front.begin(), front.end(), [](const ObjectiveVector& a, const ObjectiveVector& b) {
    if (a.coverage != b.coverage) {
      return a.coverage < b.coverage;
    }
    return a.search_cost < b.search_cost;
  });
  front.erase(std::unique(front.begin(), front.end()), front.end());
  return front;
}

/// Canonical sort + dedup for comparing solution vector sets.
inline std::vector<ObjectiveVector> sorted_vectors(std::vector<ObjectiveVector> v) {
  std::sort(v.begin(), v.end(), [](const ObjectiveVector& a, const ObjectiveVector& b) {
    if (a.coverage != b.coverage) {
      return a.coverage < b.coverage;
    }
    return a.search_cost < b.search_cost;
  });
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace testutil
