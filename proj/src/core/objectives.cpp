#include "core/objectives.hpp"

#include <algorithm>
#include <cmath>

namespace sewerplace {

namespace {

void check_plan(const PlacementPlan& plan, const UpstreamIndex& idx) {
  if (!plan.empty() && plan.sensors().back() >= idx.node_count()) {
    fail(ErrorKind::invalid_argument, "plan references a node outside the network");
  }
}

}  // namespace

EntrySetSizes entry_set_sizes(const PlacementPlan& plan, const UpstreamIndex& idx) {
  check_plan(plan, idx);
  const auto& sensors = plan.sensors();
  const std::size_t count = sensors.size();

  // Sensors in upstream-first order; each one sees only earlier m values.
  std::vector<std::uint32_t> order(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    order[i] = i;
  }
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return idx.topo_position(sensors[a]) < idx.topo_position(sensors[b]);
  });

  EntrySetSizes out;
  out.sensors = sensors;
  out.m.assign(count, 0);
  for (std::size_t oi = 0; oi < count; ++oi) {
    const NodeId s = sensors[order[oi]];
    const auto& ancestors = idx.upstream_set(s);
    std::uint32_t m = idx.upstream_closure_size(s);
    for (std::size_t oj = 0; oj < oi; ++oj) {
      if (ancestors.test(sensors[order[oj]])) {
        m -= out.m[order[oj]];
      }
    }
    out.m[order[oi]] = m;
  }
  return out;
}

std::uint32_t coverage(const EntrySetSizes& sizes) {
  return sizes.total();
}

double expected_search_cost(const EntrySetSizes& sizes) {
  const double total = static_cast<double>(sizes.total());
  if (total == 0.0) {
    return 0.0;
  }
  double cost = 0.0;
  for (std::uint32_t m : sizes.m) {
    cost += (static_cast<double>(m) / total) * std::log2(static_cast<double>(m));
  }
  return cost;
}

ObjectiveVector evaluate_plan(const PlacementPlan& plan, const UpstreamIndex& idx) {
  EntrySetSizes sizes = entry_set_sizes(plan, idx);
  return ObjectiveVector{coverage(sizes), expected_search_cost(sizes)};
}

bool is_feasible(const PlacementPlan& plan, std::uint32_t sensor_budget) {
  return plan.size() == sensor_budget;
}

std::vector<NodeId> assign_entry_sets(const PlacementPlan& plan, const UpstreamIndex& idx) {
  check_plan(plan, idx);
  const auto n = idx.node_count();
  std::vector<NodeId> owner(n, kNoNode);
  const auto& topo = idx.topo_order();
  // Walk downstream-first so a node can inherit its parent's owner.
  for (std::uint32_t pos = n; pos-- > 0;) {
    const NodeId v = topo[pos];
    if (plan.contains(v)) {
      owner[v] = v;
    } else {
      const NodeId down = idx.downstream_neighbor(v);
      owner[v] = down == kNoNode ? kNoNode : owner[down];
    }
  }
  return owner;
}

}  // namespace sewerplace
