#pragma once

#include <cstdint>
#include <unordered_set>
#include <vector>

#include "core/objectives.hpp"
#include "core/pareto.hpp"
#include "core/rng.hpp"
#include "core/types.hpp"
#include "core/upstream_index.hpp"

namespace sewerplace {

struct EGConfig {
  std::uint32_t population_size = 20;    // N: also the required final-front size
  std::uint32_t sensor_budget = 1;       // S
  std::uint32_t offspring_per_plan = 5;  // x; ignored by the enumerating baseline
  std::uint64_t seed = 0;
  std::uint32_t max_iterations = 0;      // 0 -> 10 * S
  double time_budget_ms = 0.0;           // 0 -> unlimited
};

/// A plan with its cached objectives.
struct Candidate {
  PlacementPlan plan;
  ObjectiveVector objectives;
};

struct Population {
  std::vector<Candidate> plans;  // all strictly below the sensor budget
  std::uint32_t generation = 0;
};

/// Archive of every feasible first-front arrival, deduplicated by plan.
/// The stopping rule watches the size of this set's own first front.
class FinalCandidateSet {
 public:
  bool add(const Candidate& c);  // false if the plan was already present
  const std::vector<Candidate>& members() const noexcept { return members_; }
  /// Indices (into members()) of the non-dominated members, maintained
  /// incrementally so the stopping rule stays cheap.
  const std::vector<std::size_t>& first_front() const noexcept { return front_; }

 private:
  std::vector<Candidate> members_;
  std::vector<std::size_t> front_;
  std::unordered_set<PlacementPlan> seen_;
};

struct RunResult {
  struct Solution {
    PlacementPlan plan;
    ObjectiveVector objectives;
    std::uint64_t plan_count = 1;  // oracle: number of plans with this vector
  };

  std::vector<Solution> solutions;  // final first front, canonically sorted
  std::uint32_t iterations = 0;
  std::uint64_t evaluations = 0;    // offspring generated, counted before dedup
  double wall_ms = 0.0;
  bool incomplete = false;          // iteration/time cap hit before the stop rule
  EGConfig config;
};

/// Up to `count` distinct one-sensor extensions of `plan`, sampled uniformly
/// without replacement from the nodes not yet in the plan.
std::vector<PlacementPlan> spawn_offspring(const PlacementPlan& plan, std::uint32_t count,
                                           std::uint32_t node_count, Rng& rng);

/// One iteration of the evolutionary greedy loop: sample offspring, sort the
/// combined set, migrate feasible first-front plans into `final`, select the
/// next population among plans still below the budget.
void eg_step(Population& pop, const EGConfig& cfg, FinalCandidateSet& final_set,
             const UpstreamIndex& idx);

/// Full evolutionary greedy run from a population of empty plans.
RunResult run_eg(const UpstreamIndex& idx, const EGConfig& cfg);

/// Greedy baseline: identical loop but every iteration enumerates all
/// one-sensor extensions of every plan instead of sampling x of them.
RunResult run_nmg(const UpstreamIndex& idx, const EGConfig& cfg);

inline constexpr std::uint64_t kDefaultOracleCap = 2'000'000;

/// Exact Pareto front over every plan of the given size, by exhaustive
/// enumeration. One representative plan per front vector plus the count of
/// plans attaining it. Throws Error(cap_exceeded) when C(n, S) > cap.
RunResult brute_force_pareto(const UpstreamIndex& idx, std::uint32_t sensor_budget,
                             std::uint64_t cap = kDefaultOracleCap);

}  // namespace sewerplace
