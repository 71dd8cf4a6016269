#pragma once

#include <cstdint>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "core/network.hpp"
#include "core/types.hpp"

namespace sewerplace {

/// Ancestor index over a validated network. Stores one bitset of strict
/// upstream nodes per node (n^2 bits total, ~2.4 MB at n=4394), the closure
/// size including the node itself, and an upstream-first topological order.
/// Immutable after construction; safe to share across threads.
class UpstreamIndex {
 public:
  /// Validates the network and throws Error(validation) when it breaks the
  /// in-tree model. Construction is single-threaded.
  static UpstreamIndex build(const SewerNetwork& net);

  std::uint32_t node_count() const noexcept { return n_; }

  /// True iff j is strictly upstream of i. is_upstream(i, i) is false.
  bool is_upstream(NodeId j, NodeId i) const {
    check_id(j);
    check_id(i);
    return up_[i].test(j);
  }

  /// |U(i)|: the node itself plus everything strictly upstream of it.
  std::uint32_t upstream_closure_size(NodeId i) const {
    check_id(i);
    return closure_size_[i];
  }

  const boost::dynamic_bitset<>& upstream_set(NodeId i) const {
    check_id(i);
    return up_[i];
  }

  /// Upstream-first order: every node appears after all of its ancestors.
  const std::vector<NodeId>& topo_order() const noexcept { return topo_; }

  std::uint32_t topo_position(NodeId i) const {
    check_id(i);
    return topo_pos_[i];
  }

  /// The unique node immediately downstream, or kNoNode at an outfall.
  NodeId downstream_neighbor(NodeId i) const {
    check_id(i);
    return downstream_[i];
  }

 private:
  void check_id(NodeId i) const {
    if (i >= n_) {
      fail(ErrorKind::invalid_argument, "node id out of range");
    }
  }

  std::uint32_t n_ = 0;
  std::vector<boost::dynamic_bitset<>> up_;
  std::vector<std::uint32_t> closure_size_;
  std::vector<NodeId> topo_;
  std::vector<std::uint32_t> topo_pos_;
  std::vector<NodeId> downstream_;
};

}  // namespace sewerplace
