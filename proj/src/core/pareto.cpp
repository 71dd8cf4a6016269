#include "core/pareto.hpp"

#include <algorithm>
#include <numeric>

namespace sewerplace {

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  if (a.coverage < b.coverage || a.search_cost > b.search_cost) {
    return false;
  }
  return a.coverage > b.coverage || a.search_cost < b.search_cost;
}

FrontAssignment non_dominated_sort(std::span<const ObjectiveVector> points) {
  const std::size_t n = points.size();
  FrontAssignment fa;
  fa.rank.assign(n, 0);
  if (n == 0) {
    return fa;
  }

  // Count-only variant of the fast sort: O(N^2) time, O(N) space. The
  // dominated-set lists would need up to N^2/2 entries on the combined
  // populations this sees, so counts are recomputed per peel instead.
  std::vector<std::size_t> dominators(n, 0);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = p + 1; q < n; ++q) {
      if (dominates(points[p], points[q])) {
        ++dominators[q];
      } else if (dominates(points[q], points[p])) {
        ++dominators[p];
      }
    }
  }

  std::vector<std::size_t> current;
  for (std::size_t p = 0; p < n; ++p) {
    if (dominators[p] == 0) {
      current.push_back(p);
    }
  }
  std::size_t front_index = 0;
  std::vector<char> assigned(n, 0);
  while (!current.empty()) {
    for (std::size_t p : current) {
      fa.rank[p] = front_index;
      assigned[p] = 1;
    }
    std::vector<std::size_t> next;
    for (std::size_t p : current) {
      for (std::size_t q = 0; q < n; ++q) {
        if (!assigned[q] && dominates(points[p], points[q]) && --dominators[q] == 0) {
          next.push_back(q);
        }
      }
    }
    // Re-bucket in input order to keep fronts stable.
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    current = std::move(next);
    ++front_index;
  }

  fa.fronts.resize(front_index);
  for (std::size_t p = 0; p < n; ++p) {
    fa.fronts[fa.rank[p]].push_back(p);
  }
  return fa;
}

std::vector<double> crowding_distance(std::span<const ObjectiveVector> front) {
  const std::size_t n = front.size();
  std::vector<double> distance(n, 0.0);
  if (n == 0) {
    return distance;
  }
  if (n <= 2) {
    std::fill(distance.begin(), distance.end(), kInfiniteCrowding);
    return distance;
  }

  std::vector<std::size_t> order(n);
  // Tie-break on the other objective so the ordering depends on values only,
  // keeping the result permutation-equivariant.
  auto accumulate = [&](auto key, auto other) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (key(front[a]) != key(front[b])) {
        return key(front[a]) < key(front[b]);
      }
      return other(front[a]) < other(front[b]);
    });
    distance[order.front()] = kInfiniteCrowding;
    distance[order.back()] = kInfiniteCrowding;
    const double range = key(front[order.back()]) - key(front[order.front()]);
    if (range <= 0.0) {
      return;
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
      if (distance[order[i]] == kInfiniteCrowding) {
        continue;
      }
      distance[order[i]] += (key(front[order[i + 1]]) - key(front[order[i - 1]])) / range;
    }
  };
  const auto cov_key = [](const ObjectiveVector& v) { return static_cast<double>(v.coverage); };
  const auto cost_key = [](const ObjectiveVector& v) { return v.search_cost; };
  accumulate(cov_key, cost_key);
  accumulate(cost_key, cov_key);
  return distance;
}

NormalizationBounds NormalizationBounds::from_points(std::span<const ObjectiveVector> points) {
  if (points.empty()) {
    fail(ErrorKind::invalid_argument, "normalization bounds need at least one point");
  }
  NormalizationBounds b;
  b.coverage_min = b.coverage_max = static_cast<double>(points[0].coverage);
  b.cost_min = b.cost_max = points[0].search_cost;
  for (const ObjectiveVector& p : points) {
    const double cov = static_cast<double>(p.coverage);
    b.coverage_min = std::min(b.coverage_min, cov);
    b.coverage_max = std::max(b.coverage_max, cov);
    b.cost_min = std::min(b.cost_min, p.search_cost);
    b.cost_max = std::max(b.cost_max, p.search_cost);
  }
  return b;
}

NormalizedPoints normalize_points(std::span<const ObjectiveVector> points,
                                  const NormalizationBounds& bounds) {
  NormalizedPoints out;
  out.points.reserve(points.size());
  const double cov_range = bounds.coverage_max - bounds.coverage_min;
  const double cost_range = bounds.cost_max - bounds.cost_min;
  for (const ObjectiveVector& p : points) {
    // Coverage is maximized: flip so 0 is best, matching the cost axis.
    double u = cov_range <= 0.0
                   ? 0.0
                   : (bounds.coverage_max - static_cast<double>(p.coverage)) / cov_range;
    double v = cost_range <= 0.0 ? 0.0 : (p.search_cost - bounds.cost_min) / cost_range;
    if (u < 0.0 || u > 1.0 || v < 0.0 || v > 1.0) {
      out.clamped = true;
      u = std::clamp(u, 0.0, 1.0);
      v = std::clamp(v, 0.0, 1.0);
    }
    out.points.push_back({u, v});
  }
  return out;
}

double hypervolume_2d(std::span<const std::array<double, 2>> points) {
  if (points.empty()) {
    return 0.0;
  }
  std::vector<std::array<double, 2>> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end());
  // Staircase sweep left to right; only points that improve the best v so
  // far are non-dominated and add a slab against the (1,1) reference.
  double hv = 0.0;
  double best_v = 1.0;
  for (const auto& [u, v] : sorted) {
    if (v < best_v && u < 1.0) {
      hv += (1.0 - u) * (best_v - v);
      best_v = v;
    }
  }
  return hv;
}

double hypervolume(std::span<const ObjectiveVector> points, const NormalizationBounds& bounds) {
  return hypervolume_2d(normalize_points(points, bounds).points);
}

}  // namespace sewerplace
