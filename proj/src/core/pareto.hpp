#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "core/types.hpp"

namespace sewerplace {

/// True iff a is no worse than b in both objectives and strictly better in
/// at least one. Coverage is maximized, search cost minimized; comparisons
/// are exact (all values derive deterministically from integer entry sets).
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);

/// Front partition from fast non-dominated sorting. Front 0 is f1. Within
/// each front, indices keep the input order.
struct FrontAssignment {
  std::vector<std::vector<std::size_t>> fronts;
  std::vector<std::size_t> rank;  // per input point, 0-based
};

FrontAssignment non_dominated_sort(std::span<const ObjectiveVector> points);

/// NSGA-II crowding distance for one front. Boundary solutions of each
/// objective get +infinity; a zero objective range contributes nothing.
std::vector<double> crowding_distance(std::span<const ObjectiveVector> front);

/// Per-objective (min, max) over a declared reference collection.
struct NormalizationBounds {
  double coverage_min = 0.0;
  double coverage_max = 0.0;
  double cost_min = 0.0;
  double cost_max = 0.0;

  static NormalizationBounds from_points(std::span<const ObjectiveVector> points);
};

/// Max-min normalization into [0,1]^2 with both axes flipped to
/// lower-is-better: u covers coverage, v covers cost. A degenerate range
/// maps to 0. Points outside the bounds are clamped and flagged.
struct NormalizedPoints {
  std::vector<std::array<double, 2>> points;
  bool clamped = false;
};

NormalizedPoints normalize_points(std::span<const ObjectiveVector> points,
                                  const NormalizationBounds& bounds);

/// 2-D hypervolume against reference point (1,1): the staircase area
/// dominated by the point set. Dominated and duplicate points contribute
/// nothing. Inputs are expected in [0,1]^2.
double hypervolume_2d(std::span<const std::array<double, 2>> points);

/// Convenience: normalize then compute hypervolume.
double hypervolume(std::span<const ObjectiveVector> points, const NormalizationBounds& bounds);

inline constexpr double kInfiniteCrowding = std::numeric_limits<double>::infinity();

}  // namespace sewerplace
