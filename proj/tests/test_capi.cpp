#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <sewerplace/sewerplace.h>

namespace {

namespace fs = std::filesystem;

/// Writes a node/edge CSV pair into a fresh temp dir; cleans up on scope exit.
class TempNetwork {
 public:
  TempNetwork(const std::string& nodes_csv, const std::string& edges_csv) {
    dir_ = fs::temp_directory_path() /
           ("sewerplace_capi_" + std::to_string(counter_++));
    fs::create_directories(dir_);
    write(dir_ / "nodes.csv", nodes_csv);
    write(dir_ / "edges.csv", edges_csv);
  }
  ~TempNetwork() {
    std::error_code ec;
    fs::remove_all(dir_, ec);
  }

  std::string nodes() const { return (dir_ / "nodes.csv").string(); }
  std::string edges() const { return (dir_ / "edges.csv").string(); }
  std::string dir() const { return dir_.string(); }

 private:
  static void write(const fs::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary);
    out << content;
  }
  static inline int counter_ = 0;
  fs::path dir_;
};

sp_network* load_path3() {
  TempNetwork files("id\na\nb\nc\n", "from,to\na,b\nb,c\n");
  sp_network* net = nullptr;
  REQUIRE(sp_network_load(files.nodes().c_str(), files.edges().c_str(), &net) == SP_OK);
  REQUIRE(net != nullptr);
  return net;
}

}  // namespace

TEST_CASE("capi: version and error-state basics") {
  REQUIRE(sp_version() != nullptr);
  CHECK(std::string(sp_version()) == SP_VERSION_STRING);
  REQUIRE(sp_last_error() != nullptr);

  // Null-handle frees are harmless.
  sp_network_free(nullptr);
  sp_index_free(nullptr);
  sp_result_free(nullptr);
  sp_string_free(nullptr);
  sp_buffer_free(nullptr);
}

TEST_CASE("capi: load, inspect, save, reload") {
  TempNetwork files("id,x,y\na,1,2\nb,3,4\nc,5,6\n", "from,to\na,b\nb,c\n");
  sp_network* net = nullptr;
  REQUIRE(sp_network_load(files.nodes().c_str(), files.edges().c_str(), &net) == SP_OK);

  CHECK(sp_network_node_count(net) == 3);
  CHECK(sp_network_edge_count(net) == 2);

  const char* label = nullptr;
  REQUIRE(sp_network_label(net, 1, &label) == SP_OK);
  CHECK(std::string(label) == "b");

  uint32_t id = 99;
  REQUIRE(sp_network_find_label(net, "c", &id) == SP_OK);
  CHECK(id == 2);
  CHECK(sp_network_find_label(net, "zz", &id) == SP_ERR_NOT_FOUND);
  CHECK(std::string(sp_last_error()).find("zz") != std::string::npos);

  int has = 0;
  REQUIRE(sp_network_has_coords(net, &has) == SP_OK);
  CHECK(has == 1);
  double x = 0, y = 0;
  REQUIRE(sp_network_coord(net, 2, &x, &y) == SP_OK);
  CHECK(x == 5.0);
  CHECK(y == 6.0);

  // Save and reload round-trip.
  TempNetwork out("id\nplaceholder\n", "from,to\n");
  REQUIRE(sp_network_save(net, out.nodes().c_str(), out.edges().c_str()) == SP_OK);
  sp_network* back = nullptr;
  REQUIRE(sp_network_load(out.nodes().c_str(), out.edges().c_str(), &back) == SP_OK);
  CHECK(sp_network_node_count(back) == 3);
  CHECK(sp_network_edge_count(back) == 2);
  sp_network_free(back);
  sp_network_free(net);
}

TEST_CASE("capi: parse failures map to status codes") {
  TempNetwork files("id\na\na\n", "from,to\n");
  sp_network* net = nullptr;
  CHECK(sp_network_load(files.nodes().c_str(), files.edges().c_str(), &net) == SP_ERR_PARSE);
  CHECK(net == nullptr);
  CHECK(std::string(sp_last_error()).find("duplicate label") != std::string::npos);

  CHECK(sp_network_load("/does/not/exist.csv", "/also/missing.csv", &net) == SP_ERR_IO);
  CHECK(sp_network_load(nullptr, "x", &net) == SP_ERR_INVALID_ARGUMENT);
}

TEST_CASE("capi: validation report") {
  TempNetwork files("id\na\nb\nc\n", "from,to\na,b\na,c\n");  // split flow
  sp_network* net = nullptr;
  REQUIRE(sp_network_load(files.nodes().c_str(), files.edges().c_str(), &net) == SP_OK);

  int ok = 1;
  char* report = nullptr;
  REQUIRE(sp_network_validate(net, 0, &report, &ok) == SP_OK);
  CHECK(ok == 0);
  REQUIRE(report != nullptr);
  CHECK(std::string(report).find("out-degree 2 at a") != std::string::npos);
  sp_string_free(report);

  report = nullptr;
  REQUIRE(sp_network_validate(net, 1, &report, nullptr) == SP_OK);
  REQUIRE(report != nullptr);
  CHECK(std::string(report).find("\"split_flow\"") != std::string::npos);
  sp_string_free(report);

  // An invalid network refuses to index.
  sp_index* idx = nullptr;
  CHECK(sp_index_build(net, &idx) == SP_ERR_VALIDATION);
  CHECK(idx == nullptr);
  sp_network_free(net);
}

TEST_CASE("capi: generate and fit") {
  sp_network* net = nullptr;
  REQUIRE(sp_network_generate(150, 42, nullptr, 0, &net) == SP_OK);
  CHECK(sp_network_node_count(net) == 150);
  CHECK(sp_network_edge_count(net) == 149);

  int ok = 0;
  REQUIRE(sp_network_validate(net, 0, nullptr, &ok) == SP_OK);
  CHECK(ok == 1);

  double* probs = nullptr;
  uint32_t count = 0;
  REQUIRE(sp_network_fit_branching(net, &probs, &count) == SP_OK);
  REQUIRE(probs != nullptr);
  REQUIRE(count >= 1);
  double sum = 0.0;
  for (uint32_t i = 0; i < count; ++i) {
    sum += probs[i];
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  sp_buffer_free(probs);
  sp_network_free(net);

  // Explicit distribution; determinism across calls.
  const double line[] = {0.0, 1.0};
  sp_network* p1 = nullptr;
  sp_network* p2 = nullptr;
  REQUIRE(sp_network_generate(10, 7, line, 2, &p1) == SP_OK);
  REQUIRE(sp_network_generate(10, 7, line, 2, &p2) == SP_OK);
  TempNetwork s1("x\n", "y\n");
  REQUIRE(sp_network_save(p1, s1.nodes().c_str(), s1.edges().c_str()) == SP_OK);
  std::ifstream f1(s1.edges());
  std::string e1((std::istreambuf_iterator<char>(f1)), std::istreambuf_iterator<char>());
  REQUIRE(sp_network_save(p2, s1.nodes().c_str(), s1.edges().c_str()) == SP_OK);
  std::ifstream f2(s1.edges());
  std::string e2((std::istreambuf_iterator<char>(f2)), std::istreambuf_iterator<char>());
  CHECK(e1 == e2);
  sp_network_free(p1);
  sp_network_free(p2);

  // Bad distribution rejected.
  const double bad[] = {0.5, 0.4};
  sp_network* nope = nullptr;
  CHECK(sp_network_generate(10, 1, bad, 2, &nope) == SP_ERR_INVALID_ARGUMENT);
}

TEST_CASE("capi: index queries on the 3-node path") {
  sp_network* net = load_path3();
  sp_index* idx = nullptr;
  REQUIRE(sp_index_build(net, &idx) == SP_OK);
  sp_network_free(net);  // index is self-contained

  CHECK(sp_index_node_count(idx) == 3);

  int up = -1;
  REQUIRE(sp_index_is_upstream(idx, 0, 2, &up) == SP_OK);
  CHECK(up == 1);
  REQUIRE(sp_index_is_upstream(idx, 2, 0, &up) == SP_OK);
  CHECK(up == 0);
  REQUIRE(sp_index_is_upstream(idx, 1, 1, &up) == SP_OK);
  CHECK(up == 0);  // strict: never upstream of itself

  uint32_t size = 0;
  REQUIRE(sp_index_upstream_closure_size(idx, 2, &size) == SP_OK);
  CHECK(size == 3);
  CHECK(sp_index_upstream_closure_size(idx, 9, &size) == SP_ERR_INVALID_ARGUMENT);
  sp_index_free(idx);
}

TEST_CASE("capi: plan evaluation and entry sets") {
  sp_network* net = load_path3();
  sp_index* idx = nullptr;
  REQUIRE(sp_index_build(net, &idx) == SP_OK);
  sp_network_free(net);

  uint32_t cov = 0;
  double cost = -1.0;
  const uint32_t full[] = {2};
  REQUIRE(sp_evaluate_plan(idx, full, 1, &cov, &cost) == SP_OK);
  CHECK(cov == 3);
  CHECK(cost == doctest::Approx(std::log2(3.0)).epsilon(1e-12));

  // Entry sizes come back in the caller's input order, not canonical order.
  const uint32_t pair[] = {2, 1};
  uint32_t sizes[2] = {0, 0};
  REQUIRE(sp_entry_set_sizes(idx, pair, 2, sizes) == SP_OK);
  CHECK(sizes[0] == 1);  // sensor c
  CHECK(sizes[1] == 2);  // sensor b

  uint32_t owner[3] = {9, 9, 9};
  REQUIRE(sp_assign_entry_sets(idx, pair, 2, owner) == SP_OK);
  CHECK(owner[0] == 1);
  CHECK(owner[1] == 1);
  CHECK(owner[2] == 2);

  // Uncovered nodes get the sentinel.
  const uint32_t only_b[] = {1};
  REQUIRE(sp_assign_entry_sets(idx, only_b, 1, owner) == SP_OK);
  CHECK(owner[2] == SP_NO_OWNER);

  // Empty plan evaluates to (0, 0).
  REQUIRE(sp_evaluate_plan(idx, nullptr, 0, &cov, &cost) == SP_OK);
  CHECK(cov == 0);
  CHECK(cost == 0.0);

  // Contract violations.
  const uint32_t dup[] = {1, 1};
  CHECK(sp_evaluate_plan(idx, dup, 2, &cov, &cost) == SP_ERR_INVALID_ARGUMENT);
  const uint32_t oob[] = {7};
  CHECK(sp_evaluate_plan(idx, oob, 1, &cov, &cost) == SP_ERR_INVALID_ARGUMENT);
  sp_index_free(idx);
}

TEST_CASE("capi: sp_run dispatches EG, NMG, and the oracle") {
  sp_network* net = nullptr;
  REQUIRE(sp_network_generate(40, 9, nullptr, 0, &net) == SP_OK);
  sp_index* idx = nullptr;
  REQUIRE(sp_index_build(net, &idx) == SP_OK);
  sp_network_free(net);

  sp_run_options opt = {};
  opt.algorithm = SP_ALGO_EG;
  opt.population_size = 5;
  opt.sensor_budget = 2;
  opt.offspring_per_plan = 4;
  opt.seed = 31;

  sp_result* eg = nullptr;
  REQUIRE(sp_run(idx, &opt, &eg) == SP_OK);
  CHECK(sp_result_solution_count(eg) >= 5);
  CHECK(sp_result_incomplete(eg) == 0);
  CHECK(sp_result_iterations(eg) >= 2);
  CHECK(sp_result_evaluations(eg) > 0);
  CHECK(sp_result_wall_ms(eg) >= 0.0);

  // Solutions expose objectives and ascending sensor ids.
  for (uint32_t i = 0; i < sp_result_solution_count(eg); ++i) {
    uint32_t cov = 0;
    double cost = 0;
    uint64_t plans = 0;
    REQUIRE(sp_result_solution(eg, i, &cov, &cost, &plans) == SP_OK);
    CHECK(plans == 1);
    const uint32_t* sensors = nullptr;
    uint32_t count = 0;
    REQUIRE(sp_result_solution_sensors(eg, i, &sensors, &count) == SP_OK);
    REQUIRE(count == 2);
    CHECK(sensors[0] < sensors[1]);
  }
  {
    uint32_t cov = 0;
    double cost = 0;
    CHECK(sp_result_solution(eg, 10000, &cov, &cost, nullptr) == SP_ERR_INVALID_ARGUMENT);
  }

  opt.algorithm = SP_ALGO_ORACLE;
  sp_result* oracle = nullptr;
  REQUIRE(sp_run(idx, &opt, &oracle) == SP_OK);
  CHECK(sp_result_evaluations(oracle) == 40u * 39u / 2u);  // C(40,2)

  // Every EG vector is weakly dominated by some oracle vector.
  for (uint32_t i = 0; i < sp_result_solution_count(eg); ++i) {
    uint32_t ec = 0;
    double es = 0;
    REQUIRE(sp_result_solution(eg, i, &ec, &es, nullptr) == SP_OK);
    bool covered = false;
    for (uint32_t j = 0; j < sp_result_solution_count(oracle) && !covered; ++j) {
      uint32_t oc = 0;
      double os = 0;
      REQUIRE(sp_result_solution(oracle, j, &oc, &os, nullptr) == SP_OK);
      covered = oc >= ec && os <= es + 1e-12;
    }
    CHECK(covered);
  }

  opt.algorithm = SP_ALGO_NMG;
  sp_result* nmg = nullptr;
  REQUIRE(sp_run(idx, &opt, &nmg) == SP_OK);
  CHECK(sp_result_solution_count(nmg) >= 1);

  // Oracle cap surfaces as SP_ERR_CAP_EXCEEDED.
  opt.algorithm = SP_ALGO_ORACLE;
  opt.oracle_cap = 10;
  sp_result* capped = nullptr;
  CHECK(sp_run(idx, &opt, &capped) == SP_ERR_CAP_EXCEEDED);
  CHECK(capped == nullptr);

  sp_result_free(eg);
  sp_result_free(oracle);
  sp_result_free(nmg);
  sp_index_free(idx);
}

TEST_CASE("capi: bounds and hypervolume") {
  const uint32_t covs[] = {75, 50};
  const double costs[] = {0.25, 0.5};

  sp_bounds b = {};
  // Declared bounds wider than the points: coverage in [0,100], cost [0,1].
  b.coverage_min = 0.0;
  b.coverage_max = 100.0;
  b.cost_min = 0.0;
  b.cost_max = 1.0;

  double hv = 0.0;
  int clamped = -1;
  REQUIRE(sp_hypervolume(covs, costs, 2, &b, &hv, &clamped) == SP_OK);
  // (75, 0.25) -> (0.25, 0.25); (50, 0.5) -> (0.5, 0.5) dominated.
  CHECK(hv == doctest::Approx(0.5625).epsilon(1e-13));
  CHECK(clamped == 0);

  // Bounds derived from the points themselves.
  sp_bounds tight = {};
  REQUIRE(sp_bounds_from_points(covs, costs, 2, &tight) == SP_OK);
  CHECK(tight.coverage_min == 50.0);
  CHECK(tight.coverage_max == 75.0);
  CHECK(tight.cost_min == 0.25);
  CHECK(tight.cost_max == 0.5);
  REQUIRE(sp_hypervolume(covs, costs, 2, &tight, &hv, nullptr) == SP_OK);
  CHECK(hv == doctest::Approx(1.0).epsilon(1e-13));  // best corner reaches (0,0)

  // Out-of-bounds points clamp and set the flag.
  sp_bounds narrow = {60.0, 70.0, 0.3, 0.4};
  REQUIRE(sp_hypervolume(covs, costs, 2, &narrow, &hv, &clamped) == SP_OK);
  CHECK(clamped == 1);

  CHECK(sp_bounds_from_points(nullptr, nullptr, 0, &tight) == SP_ERR_INVALID_ARGUMENT);
}
