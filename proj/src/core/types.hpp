#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <vector>

#include "core/error.hpp"

namespace sewerplace {

using NodeId = std::uint32_t;

inline constexpr NodeId kNoNode = static_cast<NodeId>(-1);

/// Objective pair for a placement plan. Coverage (manhole count) is
/// maximized, expected search cost (bits) is minimized.
struct ObjectiveVector {
  std::uint32_t coverage = 0;
  double search_cost = 0.0;

  friend bool operator==(const ObjectiveVector&, const ObjectiveVector&) = default;
};

/// A sensor placement plan: the set of node ids carrying a sensor.
/// Ids are kept sorted so equality, hashing and ordering are canonical.
class PlacementPlan {
 public:
  PlacementPlan() = default;

  explicit PlacementPlan(std::vector<NodeId> sensors) : sensors_(std::move(sensors)) {
    std::sort(sensors_.begin(), sensors_.end());
    if (std::adjacent_find(sensors_.begin(), sensors_.end()) != sensors_.end()) {
      fail(ErrorKind::invalid_argument, "placement plan contains duplicate sensors");
    }
  }

  const std::vector<NodeId>& sensors() const noexcept { return sensors_; }
  std::size_t size() const noexcept { return sensors_.size(); }
  bool empty() const noexcept { return sensors_.empty(); }

  bool contains(NodeId id) const {
    return std::binary_search(sensors_.begin(), sensors_.end(), id);
  }

  /// Copy of this plan with one more sensor; the node must not be present yet.
  PlacementPlan with(NodeId id) const {
    PlacementPlan out;
    out.sensors_.reserve(sensors_.size() + 1);
    auto pos = std::lower_bound(sensors_.begin(), sensors_.end(), id);
    if (pos != sensors_.end() && *pos == id) {
      fail(ErrorKind::invalid_argument, "sensor already present in plan");
    }
    out.sensors_.assign(sensors_.begin(), pos);
    out.sensors_.push_back(id);
    out.sensors_.insert(out.sensors_.end(), pos, sensors_.end());
    return out;
  }

  std::uint64_t hash() const noexcept {
    std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
    for (NodeId id : sensors_) {
      for (int b = 0; b < 4; ++b) {
        h ^= (id >> (8 * b)) & 0xFFu;
        h *= 1099511628211ULL;
      }
    }
    return h;
  }

  friend bool operator==(const PlacementPlan& a, const PlacementPlan& b) {
    return a.sensors_ == b.sensors_;
  }

  /// Canonical order: lexicographic on the sorted id sequence.
  friend std::strong_ordering operator<=>(const PlacementPlan& a, const PlacementPlan& b) {
    return a.sensors_ <=> b.sensors_;
  }

 private:
  std::vector<NodeId> sensors_;
};

}  // namespace sewerplace

template <>
struct std::hash<sewerplace::PlacementPlan> {
  std::size_t operator()(const sewerplace::PlacementPlan& p) const noexcept {
    return static_cast<std::size_t>(p.hash());
  }
};
