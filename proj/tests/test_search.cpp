#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "core/error.hpp"
#include "core/objectives.hpp"
#include "core/rng.hpp"
#include "core/search.hpp"
#include "helpers.hpp"

using namespace sewerplace;

namespace {

std::vector<ObjectiveVector> result_vectors(const RunResult& r) {
  std::vector<ObjectiveVector> v;
  v.reserve(r.solutions.size());
  for (const auto& s : r.solutions) {
    v.push_back(s.objectives);
  }
  return testutil::sorted_vectors(std::move(v));
}

}  // namespace

TEST_CASE("spawn_offspring: counts, distinctness, clamping") {
  Rng rng(7);

  SUBCASE("empty plan, plenty of pool") {
    auto kids = spawn_offspring(PlacementPlan(), 3, 5, rng);
    REQUIRE(kids.size() == 3);
    std::set<PlacementPlan> uniq(kids.begin(), kids.end());
    CHECK(uniq.size() == 3);
    for (const auto& k : kids) {
      CHECK(k.size() == 1);
    }
  }
  SUBCASE("pool exhaustion clamps the count") {
    PlacementPlan base(std::vector<NodeId>{2});
    auto kids = spawn_offspring(base, 10, 3, rng);
    REQUIRE(kids.size() == 2);
    std::set<PlacementPlan> uniq(kids.begin(), kids.end());
    CHECK(uniq.count(PlacementPlan(std::vector<NodeId>{0, 2})) == 1);
    CHECK(uniq.count(PlacementPlan(std::vector<NodeId>{1, 2})) == 1);
  }
  SUBCASE("every child extends the parent by exactly one") {
    PlacementPlan base(std::vector<NodeId>{1, 4});
    auto kids = spawn_offspring(base, 4, 8, rng);
    for (const auto& k : kids) {
      CHECK(k.size() == 3);
      for (NodeId s : base.sensors()) {
        CHECK(k.contains(s));
      }
    }
  }
  SUBCASE("same seed, same offspring") {
    Rng a(123), b(123);
    auto k1 = spawn_offspring(PlacementPlan(), 5, 50, a);
    auto k2 = spawn_offspring(PlacementPlan(), 5, 50, b);
    CHECK(k1 == k2);
  }
}

TEST_CASE("FinalCandidateSet: dedup and incremental first front") {
  FinalCandidateSet set;
  auto add = [&](std::vector<NodeId> ids, std::uint32_t cov, double cost) {
    return set.add(Candidate{PlacementPlan(std::move(ids)), ObjectiveVector{cov, cost}});
  };

  CHECK(add({0}, 3, 1.6));
  CHECK(!add({0}, 3, 1.6));  // duplicate plan rejected
  CHECK(set.members().size() == 1);
  CHECK(set.first_front() == std::vector<std::size_t>{0});

  // Dominating arrival displaces the front but keeps the member.
  CHECK(add({1}, 3, 1.0));
  CHECK(set.members().size() == 2);
  CHECK(set.first_front() == std::vector<std::size_t>{1});

  // Incomparable arrival joins the front.
  CHECK(add({2}, 1, 0.0));
  auto front = set.first_front();
  std::sort(front.begin(), front.end());
  CHECK(front == std::vector<std::size_t>{1, 2});

  // Dominated arrival is archived but stays off the front.
  CHECK(add({3}, 2, 1.5));
  front = set.first_front();
  std::sort(front.begin(), front.end());
  CHECK(front == std::vector<std::size_t>{1, 2});
  CHECK(set.members().size() == 4);
}

TEST_CASE("oracle: 3-node path exact fronts") {
  auto idx = UpstreamIndex::build(testutil::path3());

  SUBCASE("S=1: all three single plans are mutually non-dominated") {
    auto r = brute_force_pareto(idx, 1);
    auto vecs = result_vectors(r);
    REQUIRE(vecs.size() == 3);
    CHECK(vecs[0] == ObjectiveVector{1, 0.0});
    CHECK(vecs[1] == ObjectiveVector{2, 1.0});
    CHECK(vecs[2].coverage == 3);
    CHECK(vecs[2].search_cost == doctest::Approx(std::log2(3.0)).epsilon(1e-12));
    CHECK(r.evaluations == 3);
    for (const auto& s : r.solutions) {
      CHECK(s.plan_count == 1);
    }
  }
  SUBCASE("S=2: front is {(2,0), (3,2/3)} with two optimal plans for the latter") {
    auto r = brute_force_pareto(idx, 2);
    auto vecs = result_vectors(r);
    REQUIRE(vecs.size() == 2);
    CHECK(vecs[0] == ObjectiveVector{2, 0.0});
    CHECK(vecs[1].coverage == 3);
    CHECK(vecs[1].search_cost == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(r.evaluations == 3);  // C(3,2)

    for (const auto& s : r.solutions) {
      if (s.objectives.coverage == 3) {
        // {a,c} and {b,c} share the vector; representative is the first.
        CHECK(s.plan_count == 2);
        CHECK(s.plan == PlacementPlan(std::vector<NodeId>{0, 2}));
      } else {
        CHECK(s.plan_count == 1);
        CHECK(s.plan == PlacementPlan(std::vector<NodeId>{0, 1}));
      }
    }
  }
  SUBCASE("S=n collapses to a single plan") {
    auto r = brute_force_pareto(idx, 3);
    REQUIRE(r.solutions.size() == 1);
    CHECK(r.solutions[0].objectives.coverage == 3);
    CHECK(r.solutions[0].plan_count == 1);
    CHECK(r.evaluations == 1);
  }
}

TEST_CASE("oracle: combinatorial cap raises cap_exceeded") {
  Rng rng(5);
  auto net = testutil::random_intree(40, rng);
  auto idx = UpstreamIndex::build(net);
  // C(40, 5) = 658008 > 1000
  CHECK_THROWS_AS(brute_force_pareto(idx, 5, 1000), Error);
  try {
    brute_force_pareto(idx, 5, 1000);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::cap_exceeded);
  }
}

TEST_CASE("oracle: invalid budget rejected") {
  auto idx = UpstreamIndex::build(testutil::path3());
  CHECK_THROWS_AS(brute_force_pareto(idx, 0), Error);
  CHECK_THROWS_AS(brute_force_pareto(idx, 4), Error);  // S > n
}

TEST_CASE("run_eg: S=1 on a path finds the full single-sensor front") {
  auto idx = UpstreamIndex::build(testutil::path3());
  EGConfig cfg;
  cfg.population_size = 3;
  cfg.sensor_budget = 1;
  cfg.offspring_per_plan = 3;  // x = pool size: exhaustive in one step
  cfg.seed = 11;

  auto r = run_eg(idx, cfg);
  CHECK(!r.incomplete);
  auto vecs = result_vectors(r);
  auto oracle = result_vectors(brute_force_pareto(idx, 1));
  CHECK(vecs == oracle);
  for (const auto& s : r.solutions) {
    CHECK(is_feasible(s.plan, 1));
  }
}

TEST_CASE("run_eg: evaluation counting contract (pre-dedup)") {
  // Any two of the three singles are mutually non-dominated, so the final
  // front reaches N=2 after exactly one iteration of the 2 parents x 2
  // offspring draw: 4 generated plans counted before dedup.
  auto idx = UpstreamIndex::build(testutil::path3());
  EGConfig cfg;
  cfg.population_size = 2;
  cfg.sensor_budget = 1;
  cfg.offspring_per_plan = 2;
  cfg.seed = 3;

  auto r = run_eg(idx, cfg);
  CHECK(r.iterations == 1);
  CHECK(r.evaluations == 4);
}

TEST_CASE("run_eg: plans need S iterations to reach the budget") {
  Rng rng(64);
  auto net = testutil::random_intree(50, rng);
  auto idx = UpstreamIndex::build(net);
  EGConfig cfg;
  cfg.population_size = 5;
  cfg.sensor_budget = 4;
  cfg.offspring_per_plan = 6;
  cfg.seed = 31;

  auto r = run_eg(idx, cfg);
  CHECK(!r.incomplete);
  // Offspring add one sensor per iteration, so nothing feasible can exist
  // before iteration S.
  CHECK(r.iterations >= cfg.sensor_budget);
  // With a pool always larger than x, every iteration generates exactly
  // x offspring per population member.
  CHECK(r.evaluations % cfg.offspring_per_plan == 0);
}

TEST_CASE("run_eg: determinism and seed sensitivity") {
  Rng rng(21);
  auto net = testutil::random_intree(60, rng);
  auto idx = UpstreamIndex::build(net);
  EGConfig cfg;
  cfg.population_size = 8;
  cfg.sensor_budget = 4;
  cfg.offspring_per_plan = 5;
  cfg.seed = 1234;

  auto a = run_eg(idx, cfg);
  auto b = run_eg(idx, cfg);
  REQUIRE(a.solutions.size() == b.solutions.size());
  for (std::size_t i = 0; i < a.solutions.size(); ++i) {
    CHECK(a.solutions[i].plan == b.solutions[i].plan);
    CHECK(a.solutions[i].objectives == b.solutions[i].objectives);
  }
  CHECK(a.iterations == b.iterations);
  CHECK(a.evaluations == b.evaluations);
}

TEST_CASE("run_eg: returned solutions are feasible and mutually non-dominated") {
  Rng rng(88);
  auto net = testutil::random_intree(80, rng);
  auto idx = UpstreamIndex::build(net);
  EGConfig cfg;
  cfg.population_size = 10;
  cfg.sensor_budget = 5;
  cfg.offspring_per_plan = 4;
  cfg.seed = 5;

  auto r = run_eg(idx, cfg);
  CHECK(!r.incomplete);
  CHECK(r.solutions.size() >= cfg.population_size);
  std::set<PlacementPlan> plans;
  for (const auto& s : r.solutions) {
    CHECK(is_feasible(s.plan, cfg.sensor_budget));
    CHECK(evaluate_plan(s.plan, idx) == s.objectives);
    plans.insert(s.plan);
  }
  CHECK(plans.size() == r.solutions.size());  // distinct plans
  for (const auto& s1 : r.solutions) {
    for (const auto& s2 : r.solutions) {
      CHECK(!dominates(s1.objectives, s2.objectives));
    }
  }
}

TEST_CASE("run_eg: oracle soundness on a small instance") {
  Rng rng(17);
  auto net = testutil::random_intree(12, rng);
  auto idx = UpstreamIndex::build(net);
  EGConfig cfg;
  cfg.population_size = 6;
  cfg.sensor_budget = 3;
  cfg.offspring_per_plan = 4;
  cfg.seed = 2;

  auto r = run_eg(idx, cfg);
  auto oracle = result_vectors(brute_force_pareto(idx, 3));
  for (const auto& s : r.solutions) {
    bool covered = false;
    for (const auto& o : oracle) {
      if (o == s.objectives || dominates(o, s.objectives)) {
        covered = true;
        break;
      }
    }
    CHECK(covered);
  }
}

TEST_CASE("run_eg: iteration cap flags the result incomplete") {
  Rng rng(9);
  auto net = testutil::random_intree(100, rng);
  auto idx = UpstreamIndex::build(net);
  EGConfig cfg;
  cfg.population_size = 10;
  cfg.sensor_budget = 6;
  cfg.offspring_per_plan = 1;
  cfg.seed = 4;
  cfg.max_iterations = 6;  // too few to fill a 10-member front

  auto r = run_eg(idx, cfg);
  CHECK(r.incomplete);
  CHECK(r.iterations == 6);
}

TEST_CASE("run_nmg: equals the oracle on small instances") {
  Rng rng(404);
  for (int trial = 0; trial < 8; ++trial) {
    auto n = static_cast<std::uint32_t>(4 + rng.next_below(9));  // 4..12
    auto net = testutil::random_intree(n, rng);
    auto idx = UpstreamIndex::build(net);
    auto budget = static_cast<std::uint32_t>(1 + rng.next_below(3));
    if (budget > n) {
      budget = n;
    }

    EGConfig cfg;
    cfg.population_size = 20;
    cfg.sensor_budget = budget;
    cfg.seed = trial;

    auto nmg = run_nmg(idx, cfg);
    auto oracle = result_vectors(brute_force_pareto(idx, budget));
    CHECK(result_vectors(nmg) == oracle);
  }
}

TEST_CASE("run_nmg: 3-node path S=2 fixture") {
  auto idx = UpstreamIndex::build(testutil::path3());
  EGConfig cfg;
  cfg.population_size = 2;
  cfg.sensor_budget = 2;
  cfg.seed = 0;

  auto r = run_nmg(idx, cfg);
  auto vecs = result_vectors(r);
  REQUIRE(vecs.size() == 2);
  CHECK(vecs[0] == ObjectiveVector{2, 0.0});
  CHECK(vecs[1].coverage == 3);
  CHECK(vecs[1].search_cost == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("run_nmg: evaluation counting contract") {
  Rng rng(55);
  auto net = testutil::random_intree(30, rng);
  auto idx = UpstreamIndex::build(net);
  EGConfig cfg;
  cfg.population_size = 1;
  cfg.sensor_budget = 2;
  cfg.seed = 6;

  auto r = run_nmg(idx, cfg);
  // Iteration 1: one empty plan -> 30 extensions; the survivor is a single.
  // Iteration 2: that single -> 29 extensions, at least one of which lands
  // on the first front (the cheapest max-coverage plan), filling N=1.
  CHECK(r.iterations == 2);
  CHECK(r.evaluations == 30 + 29);
}

TEST_CASE("configs are validated") {
  auto idx = UpstreamIndex::build(testutil::path3());
  EGConfig cfg;

  cfg.population_size = 0;
  CHECK_THROWS_AS(run_eg(idx, cfg), Error);

  cfg = EGConfig{};
  cfg.sensor_budget = 0;
  CHECK_THROWS_AS(run_eg(idx, cfg), Error);

  cfg = EGConfig{};
  cfg.sensor_budget = 5;  // > n = 3
  CHECK_THROWS_AS(run_eg(idx, cfg), Error);

  cfg = EGConfig{};
  cfg.offspring_per_plan = 0;
  CHECK_THROWS_AS(run_eg(idx, cfg), Error);
}
