#include "core/upstream_index.hpp"

#include <algorithm>

namespace sewerplace {

UpstreamIndex UpstreamIndex::build(const SewerNetwork& net) {
  ValidationReport report = validate_network(net);
  if (!report.ok()) {
    fail(ErrorKind::validation, "network is not a valid in-tree: " + report.to_text());
  }

  UpstreamIndex idx;
  const auto n = net.node_count();
  idx.n_ = n;
  idx.downstream_.assign(n, kNoNode);
  std::vector<std::vector<NodeId>> upstream_of(n);
  std::vector<std::uint32_t> pending(n, 0);  // unprocessed upstream neighbors
  for (const FlowEdge& e : net.edges()) {
    idx.downstream_[e.from] = e.to;
    upstream_of[e.to].push_back(e.from);
    ++pending[e.to];
  }

  // Upstream-first topological order; sources enter in id order.
  idx.topo_.reserve(n);
  std::vector<NodeId> stack;
  for (NodeId v = n; v-- > 0;) {
    if (pending[v] == 0) {
      stack.push_back(v);
    }
  }
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    idx.topo_.push_back(v);
    if (idx.downstream_[v] != kNoNode) {
      NodeId w = idx.downstream_[v];
      if (--pending[w] == 0) {
        stack.push_back(w);
      }
    }
  }

  idx.topo_pos_.assign(n, 0);
  for (std::uint32_t pos = 0; pos < n; ++pos) {
    idx.topo_pos_[idx.topo_[pos]] = pos;
  }

  idx.up_.assign(n, boost::dynamic_bitset<>(n));
  idx.closure_size_.assign(n, 1);
  for (NodeId v : idx.topo_) {
    auto& set = idx.up_[v];
    for (NodeId u : upstream_of[v]) {
      set |= idx.up_[u];
      set.set(u);
    }
    idx.closure_size_[v] = static_cast<std::uint32_t>(set.count()) + 1;
  }

  return idx;
}

}  // namespace sewerplace
