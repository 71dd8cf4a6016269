#include "core/search.hpp"

#include <algorithm>
#include <chrono>
#include <string>

#include "core/error.hpp"

namespace sewerplace {

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

void check_config(const EGConfig& cfg, std::uint32_t node_count, bool sampled) {
  if (cfg.population_size == 0)
    fail(ErrorKind::invalid_argument, "population size must be at least 1");
  if (cfg.sensor_budget == 0) fail(ErrorKind::invalid_argument, "sensor budget must be at least 1");
  if (cfg.sensor_budget > node_count)
    fail(ErrorKind::invalid_argument,
         "sensor budget " + std::to_string(cfg.sensor_budget) + " exceeds node count " +
             std::to_string(node_count));
  if (sampled && cfg.offspring_per_plan == 0)
    fail(ErrorKind::invalid_argument, "offspring per plan must be at least 1");
}

enum class OffspringMode { sampled, enumerate_all };

// All one-sensor extensions of `plan`, in ascending node order.
std::vector<PlacementPlan> all_extensions(const PlacementPlan& plan, std::uint32_t node_count) {
  std::vector<PlacementPlan> out;
  out.reserve(node_count - plan.size());
  for (NodeId v = 0; v < node_count; ++v)
    if (!plan.contains(v)) out.push_back(plan.with(v));
  return out;
}

// One EG/NMG iteration over `pop`; returns the number of offspring generated
// before any deduplication (the evaluation-count contract).
std::uint64_t step(Population& pop, const EGConfig& cfg, FinalCandidateSet& final_set,
                   const UpstreamIndex& idx, OffspringMode mode) {
  const std::uint32_t n = idx.node_count();
  std::uint64_t generated = 0;

  // Combined set S_t ∪ S'_{t+1}, deduplicated by plan, first occurrence kept.
  std::vector<Candidate> combined;
  std::unordered_set<PlacementPlan> seen;
  seen.reserve(pop.plans.size() * (std::size_t{cfg.offspring_per_plan} + 1));
  for (const Candidate& c : pop.plans)
    if (seen.insert(c.plan).second) combined.push_back(c);

  for (std::size_t pi = 0; pi < pop.plans.size(); ++pi) {
    const PlacementPlan& parent = pop.plans[pi].plan;
    std::vector<PlacementPlan> offspring;
    if (mode == OffspringMode::sampled) {
      Rng rng(Rng::mix({cfg.seed, pop.generation, parent.hash(), pi}));
      offspring = spawn_offspring(parent, cfg.offspring_per_plan, n, rng);
    } else {
      offspring = all_extensions(parent, n);
    }
    generated += offspring.size();
    for (PlacementPlan& child : offspring) {
      if (!seen.insert(child).second) continue;
      ObjectiveVector obj = evaluate_plan(child, idx);
      combined.push_back(Candidate{std::move(child), obj});
    }
  }

  // Rank the combined set and compute crowding within each front.
  std::vector<ObjectiveVector> points;
  points.reserve(combined.size());
  for (const Candidate& c : combined) points.push_back(c.objectives);
  FrontAssignment fronts = non_dominated_sort(points);

  std::vector<double> crowd(combined.size(), 0.0);
  std::vector<ObjectiveVector> front_points;
  for (const std::vector<std::size_t>& front : fronts.fronts) {
    front_points.clear();
    for (std::size_t i : front) front_points.push_back(points[i]);
    std::vector<double> d = crowding_distance(front_points);
    for (std::size_t k = 0; k < front.size(); ++k) crowd[front[k]] = d[k];
  }

  // Feasible members of the first front migrate to the final candidate set.
  if (!fronts.fronts.empty())
    for (std::size_t i : fronts.fronts.front())
      if (combined[i].plan.size() == cfg.sensor_budget) final_set.add(combined[i]);

  // Next population: best N plans still below the sensor budget, ordered by
  // rank, then descending crowding, then canonical plan order.
  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < combined.size(); ++i)
    if (combined[i].plan.size() < cfg.sensor_budget) eligible.push_back(i);
  std::sort(eligible.begin(), eligible.end(), [&](std::size_t a, std::size_t b) {
    if (fronts.rank[a] != fronts.rank[b]) return fronts.rank[a] < fronts.rank[b];
    if (crowd[a] != crowd[b]) return crowd[a] > crowd[b];
    return combined[a].plan < combined[b].plan;
  });
  if (eligible.size() > cfg.population_size) eligible.resize(cfg.population_size);

  std::vector<Candidate> next;
  next.reserve(eligible.size());
  for (std::size_t i : eligible) next.push_back(combined[i]);
  pop.plans = std::move(next);
  ++pop.generation;
  return generated;
}

RunResult run_common(const UpstreamIndex& idx, const EGConfig& cfg, OffspringMode mode) {
  check_config(cfg, idx.node_count(), mode == OffspringMode::sampled);
  const auto start = std::chrono::steady_clock::now();
  const std::uint32_t max_iter =
      cfg.max_iterations != 0 ? cfg.max_iterations : 10 * cfg.sensor_budget;

  Population pop;
  const ObjectiveVector empty_obj = evaluate_plan(PlacementPlan{}, idx);
  pop.plans.assign(cfg.population_size, Candidate{PlacementPlan{}, empty_obj});

  FinalCandidateSet final_set;
  RunResult result;
  result.config = cfg;

  while (true) {
    if (final_set.first_front().size() >= cfg.population_size) break;
    if (result.iterations >= max_iter) {
      result.incomplete = true;
      break;
    }
    if (cfg.time_budget_ms > 0.0 && elapsed_ms(start) >= cfg.time_budget_ms) {
      result.incomplete = true;
      break;
    }
    if (pop.plans.empty()) {
      result.incomplete = true;
      break;
    }
    result.evaluations += step(pop, cfg, final_set, idx, mode);
    ++result.iterations;
  }

  for (std::size_t i : final_set.first_front()) {
    const Candidate& c = final_set.members()[i];
    result.solutions.push_back(RunResult::Solution{c.plan, c.objectives, 1});
  }
  std::sort(result.solutions.begin(), result.solutions.end(),
            [](const RunResult::Solution& a, const RunResult::Solution& b) {
              if (a.objectives.coverage != b.objectives.coverage)
                return a.objectives.coverage < b.objectives.coverage;
              if (a.objectives.search_cost != b.objectives.search_cost)
                return a.objectives.search_cost < b.objectives.search_cost;
              return a.plan < b.plan;
            });
  result.wall_ms = elapsed_ms(start);
  return result;
}

}  // namespace

bool FinalCandidateSet::add(const Candidate& c) {
  if (!seen_.insert(c.plan).second) return false;
  const std::size_t id = members_.size();
  members_.push_back(c);

  // Keep `front_` the exact non-dominated subset: dominance is transitive, so
  // comparing against current front members alone is sufficient.
  for (std::size_t i : front_)
    if (dominates(members_[i].objectives, c.objectives)) return true;
  std::vector<std::size_t> kept;
  kept.reserve(front_.size() + 1);
  for (std::size_t i : front_)
    if (!dominates(c.objectives, members_[i].objectives)) kept.push_back(i);
  kept.push_back(id);
  front_ = std::move(kept);
  return true;
}

std::vector<PlacementPlan> spawn_offspring(const PlacementPlan& plan, std::uint32_t count,
                                           std::uint32_t node_count, Rng& rng) {
  if (plan.size() > 0 && plan.sensors().back() >= node_count)
    fail(ErrorKind::invalid_argument, "plan references a node outside the network");
  std::vector<NodeId> pool;
  pool.reserve(node_count - plan.size());
  for (NodeId v = 0; v < node_count; ++v)
    if (!plan.contains(v)) pool.push_back(v);

  const std::size_t take = std::min<std::size_t>(count, pool.size());
  // Partial Fisher-Yates: uniform sample without replacement, deterministic
  // for a given generator state.
  for (std::size_t i = 0; i < take; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.next_below(pool.size() - i));
    std::swap(pool[i], pool[j]);
  }

  std::vector<PlacementPlan> out;
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i) out.push_back(plan.with(pool[i]));
  return out;
}

void eg_step(Population& pop, const EGConfig& cfg, FinalCandidateSet& final_set,
             const UpstreamIndex& idx) {
  check_config(cfg, idx.node_count(), true);
  step(pop, cfg, final_set, idx, OffspringMode::sampled);
}

RunResult run_eg(const UpstreamIndex& idx, const EGConfig& cfg) {
  return run_common(idx, cfg, OffspringMode::sampled);
}

RunResult run_nmg(const UpstreamIndex& idx, const EGConfig& cfg) {
  return run_common(idx, cfg, OffspringMode::enumerate_all);
}

RunResult brute_force_pareto(const UpstreamIndex& idx, std::uint32_t sensor_budget,
                             std::uint64_t cap) {
  const std::uint32_t n = idx.node_count();
  if (sensor_budget == 0) fail(ErrorKind::invalid_argument, "sensor budget must be at least 1");
  if (sensor_budget > n)
    fail(ErrorKind::invalid_argument, "sensor budget " + std::to_string(sensor_budget) +
                                          " exceeds node count " + std::to_string(n));

  // C(n, S) with overflow protection; refuse to start when over the cap.
  unsigned __int128 combos = 1;
  for (std::uint32_t k = 1; k <= sensor_budget; ++k) {
    combos = combos * (n - k + 1) / k;  // exact: product of k consecutive ints divisible by k!
    if (combos > static_cast<unsigned __int128>(cap) * 4096) break;  // far beyond cap already
  }
  if (combos > cap)
    fail(ErrorKind::cap_exceeded, "exhaustive enumeration would evaluate more than " +
                                      std::to_string(cap) + " plans");

  const auto start = std::chrono::steady_clock::now();

  struct ArchiveEntry {
    ObjectiveVector objectives;
    PlacementPlan plan;  // lexicographically first plan attaining the vector
    std::uint64_t plan_count = 0;
  };
  std::vector<ArchiveEntry> archive;

  std::vector<NodeId> comb(sensor_budget);
  for (std::uint32_t k = 0; k < sensor_budget; ++k) comb[k] = k;

  RunResult result;
  result.config.sensor_budget = sensor_budget;
  result.config.population_size = 0;
  result.config.offspring_per_plan = 0;

  while (true) {
    PlacementPlan plan(comb);
    ObjectiveVector obj = evaluate_plan(plan, idx);
    ++result.evaluations;

    bool dominated = false;
    bool matched = false;
    for (ArchiveEntry& e : archive) {
      if (e.objectives == obj) {
        ++e.plan_count;
        matched = true;
        break;
      }
      if (dominates(e.objectives, obj)) {
        dominated = true;
        break;
      }
    }
    if (!dominated && !matched) {
      std::erase_if(archive,
                    [&](const ArchiveEntry& e) { return dominates(obj, e.objectives); });
      archive.push_back(ArchiveEntry{obj, plan, 1});
    }

    // Next combination in lexicographic order.
    std::uint32_t k = sensor_budget;
    while (k > 0 && comb[k - 1] == n - sensor_budget + k - 1) --k;
    if (k == 0) break;
    ++comb[k - 1];
    for (std::uint32_t j = k; j < sensor_budget; ++j) comb[j] = comb[j - 1] + 1;
  }

  for (const ArchiveEntry& e : archive)
    result.solutions.push_back(RunResult::Solution{e.plan, e.objectives, e.plan_count});
  std::sort(result.solutions.begin(), result.solutions.end(),
            [](const RunResult::Solution& a, const RunResult::Solution& b) {
              if (a.objectives.coverage != b.objectives.coverage)
                return a.objectives.coverage < b.objectives.coverage;
              if (a.objectives.search_cost != b.objectives.search_cost)
                return a.objectives.search_cost < b.objectives.search_cost;
              return a.plan < b.plan;
            });
  result.wall_ms = elapsed_ms(start);
  return result;
}

}  // namespace sewerplace
