#pragma once

#include <cstdint>
#include <vector>

#include "core/types.hpp"
#include "core/upstream_index.hpp"

namespace sewerplace {

/// Entry-set size m_i per placed sensor, in the plan's canonical (sorted-id)
/// order. Entry sets partition the covered region, so sum(m) equals the
/// number of distinct manholes covered by the plan.
struct EntrySetSizes {
  std::vector<NodeId> sensors;      // canonical order
  std::vector<std::uint32_t> m;     // parallel to sensors; every m[i] >= 1

  std::uint32_t total() const {
    std::uint32_t sum = 0;
    for (std::uint32_t v : m) {
      sum += v;
    }
    return sum;
  }
};

/// Backward search as a single sweep over sensors in upstream-first order:
/// m_i = |U(i)| - sum of m_j over placed sensors j upstream of i.
EntrySetSizes entry_set_sizes(const PlacementPlan& plan, const UpstreamIndex& idx);

/// Sensing coverage: number of distinct manholes with a sensor at or
/// downstream of them, = sum of entry-set sizes.
std::uint32_t coverage(const EntrySetSizes& sizes);

/// Entry-set-size-weighted average of log2(m_i), in bits. Zero for an empty
/// plan by convention.
double expected_search_cost(const EntrySetSizes& sizes);

/// Both objectives for a plan. Pure and deterministic.
ObjectiveVector evaluate_plan(const PlacementPlan& plan, const UpstreamIndex& idx);

/// True iff the plan uses exactly `sensor_budget` sensors.
bool is_feasible(const PlacementPlan& plan, std::uint32_t sensor_budget);

/// Per-node owning sensor: the nearest sensor at or downstream of each node,
/// kNoNode where uncovered. Preimage sizes equal the entry-set sizes.
std::vector<NodeId> assign_entry_sets(const PlacementPlan& plan, const UpstreamIndex& idx);

}  // namespace sewerplace
