#include "sewerplace/sewerplace.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "core/error.hpp"
#include "core/network.hpp"
#include "core/objectives.hpp"
#include "core/pareto.hpp"
#include "core/search.hpp"
#include "core/synthgen.hpp"
#include "core/upstream_index.hpp"

using namespace sewerplace;

extern "C" {

struct sp_network {
  SewerNetwork net;
};

struct sp_index {
  UpstreamIndex idx;
};

struct sp_result {
  RunResult run;
};

}  // extern "C"

namespace {

thread_local std::string t_last_error;

void set_error(std::string msg) { t_last_error = std::move(msg); }

sp_status map_kind(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument:
      return SP_ERR_INVALID_ARGUMENT;
    case ErrorKind::parse:
      return SP_ERR_PARSE;
    case ErrorKind::validation:
      return SP_ERR_VALIDATION;
    case ErrorKind::io:
      return SP_ERR_IO;
    case ErrorKind::cap_exceeded:
      return SP_ERR_CAP_EXCEEDED;
  }
  return SP_ERR_INTERNAL;
}

// Runs the body with a catch-all boundary; exceptions never cross the ABI.
template <typename F>
sp_status guarded(F&& body) noexcept {
  try {
    return body();
  } catch (const Error& e) {
    set_error(e.what());
    return map_kind(e.kind());
  } catch (const std::bad_alloc&) {
    set_error("out of memory");
    return SP_ERR_INTERNAL;
  } catch (const std::exception& e) {
    set_error(e.what());
    return SP_ERR_INTERNAL;
  } catch (...) {
    set_error("unknown error");
    return SP_ERR_INTERNAL;
  }
}

sp_status require(bool cond, const char* what) {
  if (cond) return SP_OK;
  set_error(std::string("null or invalid argument: ") + what);
  return SP_ERR_INVALID_ARGUMENT;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

PlacementPlan plan_from(const uint32_t* sensors, uint32_t count) {
  std::vector<NodeId> ids(sensors, sensors + count);
  return PlacementPlan(std::move(ids));
}

}  // namespace

extern "C" {

SP_API const char* sp_version(void) { return SP_VERSION_STRING; }

SP_API const char* sp_last_error(void) { return t_last_error.c_str(); }

SP_API void sp_string_free(char* s) { std::free(s); }

SP_API void sp_buffer_free(void* p) { std::free(p); }

/* ---------------------------------------------------------------- network */

SP_API sp_status sp_network_load(const char* nodes_csv_path, const char* edges_csv_path,
                                 sp_network** out) {
  if (sp_status s = require(nodes_csv_path && edges_csv_path && out, "sp_network_load"); s != SP_OK)
    return s;
  return guarded([&] {
    auto* handle = new sp_network{parse_network(nodes_csv_path, edges_csv_path)};
    *out = handle;
    return SP_OK;
  });
}

SP_API sp_status sp_network_save(const sp_network* net, const char* nodes_csv_path,
                                 const char* edges_csv_path) {
  if (sp_status s = require(net && nodes_csv_path && edges_csv_path, "sp_network_save");
      s != SP_OK)
    return s;
  return guarded([&] {
    save_network(net->net, nodes_csv_path, edges_csv_path);
    return SP_OK;
  });
}

SP_API void sp_network_free(sp_network* net) { delete net; }

SP_API uint32_t sp_network_node_count(const sp_network* net) {
  return net != nullptr ? net->net.node_count() : 0;
}

SP_API uint64_t sp_network_edge_count(const sp_network* net) {
  return net != nullptr ? net->net.edge_count() : 0;
}

SP_API sp_status sp_network_label(const sp_network* net, uint32_t node, const char** out_label) {
  if (sp_status s = require(net && out_label, "sp_network_label"); s != SP_OK) return s;
  return guarded([&] {
    *out_label = net->net.label(node).c_str();
    return SP_OK;
  });
}

SP_API sp_status sp_network_find_label(const sp_network* net, const char* label,
                                       uint32_t* out_node) {
  if (sp_status s = require(net && label && out_node, "sp_network_find_label"); s != SP_OK)
    return s;
  return guarded([&] {
    if (auto id = net->net.find(label)) {
      *out_node = *id;
      return SP_OK;
    }
    set_error(std::string("unknown node label: ") + label);
    return SP_ERR_NOT_FOUND;
  });
}

SP_API sp_status sp_network_has_coords(const sp_network* net, int* out_has) {
  if (sp_status s = require(net && out_has, "sp_network_has_coords"); s != SP_OK) return s;
  *out_has = net->net.has_coords() ? 1 : 0;
  return SP_OK;
}

SP_API sp_status sp_network_coord(const sp_network* net, uint32_t node, double* out_x,
                                  double* out_y) {
  if (sp_status s = require(net && out_x && out_y, "sp_network_coord"); s != SP_OK) return s;
  return guarded([&] {
    *out_x = net->net.x(node);
    *out_y = net->net.y(node);
    return SP_OK;
  });
}

SP_API sp_status sp_network_validate(const sp_network* net, int as_json, char** out_report,
                                     int* out_ok) {
  if (sp_status s = require(net != nullptr, "sp_network_validate"); s != SP_OK) return s;
  return guarded([&] {
    ValidationReport report = validate_network(net->net);
    if (out_ok != nullptr) *out_ok = report.ok() ? 1 : 0;
    if (out_report != nullptr)
      *out_report = dup_string(as_json != 0 ? report.to_json() : report.to_text());
    return SP_OK;
  });
}

SP_API sp_status sp_network_generate(uint32_t node_count, uint64_t seed,
                                     const double* probabilities, uint32_t probability_count,
                                     sp_network** out) {
  if (sp_status s = require(out != nullptr, "sp_network_generate"); s != SP_OK) return s;
  if (probabilities == nullptr && probability_count != 0)
    return require(false, "probabilities is NULL but probability_count != 0");
  return guarded([&] {
    SynthConfig cfg;
    cfg.n = node_count;
    cfg.seed = seed;
    if (probability_count != 0)
      cfg.distribution =
          BranchingDistribution(std::vector<double>(probabilities, probabilities + probability_count));
    *out = new sp_network{generate_intree(cfg)};
    return SP_OK;
  });
}

SP_API sp_status sp_network_fit_branching(const sp_network* net, double** out_probabilities,
                                          uint32_t* out_count) {
  if (sp_status s = require(net && out_probabilities && out_count, "sp_network_fit_branching");
      s != SP_OK)
    return s;
  return guarded([&] {
    BranchingDistribution dist = fit_branching_distribution(net->net);
    const std::vector<double>& p = dist.probabilities();
    auto* buf = static_cast<double*>(std::malloc(p.size() * sizeof(double)));
    if (buf == nullptr) throw std::bad_alloc();
    std::memcpy(buf, p.data(), p.size() * sizeof(double));
    *out_probabilities = buf;
    *out_count = static_cast<uint32_t>(p.size());
    return SP_OK;
  });
}

/* ------------------------------------------------------------------ index */

SP_API sp_status sp_index_build(const sp_network* net, sp_index** out) {
  if (sp_status s = require(net && out, "sp_index_build"); s != SP_OK) return s;
  return guarded([&] {
    *out = new sp_index{UpstreamIndex::build(net->net)};
    return SP_OK;
  });
}

SP_API void sp_index_free(sp_index* idx) { delete idx; }

SP_API uint32_t sp_index_node_count(const sp_index* idx) {
  return idx != nullptr ? idx->idx.node_count() : 0;
}

SP_API sp_status sp_index_is_upstream(const sp_index* idx, uint32_t j, uint32_t i, int* out) {
  if (sp_status s = require(idx && out, "sp_index_is_upstream"); s != SP_OK) return s;
  return guarded([&] {
    *out = idx->idx.is_upstream(j, i) ? 1 : 0;
    return SP_OK;
  });
}

SP_API sp_status sp_index_upstream_closure_size(const sp_index* idx, uint32_t i,
                                                uint32_t* out_size) {
  if (sp_status s = require(idx && out_size, "sp_index_upstream_closure_size"); s != SP_OK)
    return s;
  return guarded([&] {
    *out_size = idx->idx.upstream_closure_size(i);
    return SP_OK;
  });
}

/* ------------------------------------------------------------- objectives */

SP_API sp_status sp_evaluate_plan(const sp_index* idx, const uint32_t* sensors,
                                  uint32_t sensor_count, uint32_t* out_coverage,
                                  double* out_search_cost) {
  if (sp_status s = require(idx && (sensors || sensor_count == 0) && out_coverage &&
                                out_search_cost,
                            "sp_evaluate_plan");
      s != SP_OK)
    return s;
  return guarded([&] {
    ObjectiveVector v = evaluate_plan(plan_from(sensors, sensor_count), idx->idx);
    *out_coverage = v.coverage;
    *out_search_cost = v.search_cost;
    return SP_OK;
  });
}

SP_API sp_status sp_entry_set_sizes(const sp_index* idx, const uint32_t* sensors,
                                    uint32_t sensor_count, uint32_t* out_sizes) {
  if (sp_status s =
          require(idx && (sensors || sensor_count == 0) && (out_sizes || sensor_count == 0),
                  "sp_entry_set_sizes");
      s != SP_OK)
    return s;
  return guarded([&] {
    EntrySetSizes sizes = entry_set_sizes(plan_from(sensors, sensor_count), idx->idx);
    // Map canonical-order results back onto the caller's sensor order.
    for (uint32_t k = 0; k < sensor_count; ++k) {
      const auto it =
          std::lower_bound(sizes.sensors.begin(), sizes.sensors.end(), sensors[k]);
      out_sizes[k] = sizes.m[static_cast<std::size_t>(it - sizes.sensors.begin())];
    }
    return SP_OK;
  });
}

SP_API sp_status sp_assign_entry_sets(const sp_index* idx, const uint32_t* sensors,
                                      uint32_t sensor_count, uint32_t* out_owner) {
  if (sp_status s = require(idx && (sensors || sensor_count == 0) && out_owner,
                            "sp_assign_entry_sets");
      s != SP_OK)
    return s;
  return guarded([&] {
    std::vector<NodeId> owner = assign_entry_sets(plan_from(sensors, sensor_count), idx->idx);
    for (std::size_t v = 0; v < owner.size(); ++v)
      out_owner[v] = owner[v] == kNoNode ? SP_NO_OWNER : owner[v];
    return SP_OK;
  });
}

/* ----------------------------------------------------------------- search */

SP_API sp_status sp_run(const sp_index* idx, const sp_run_options* options, sp_result** out) {
  if (sp_status s = require(idx && options && out, "sp_run"); s != SP_OK) return s;
  return guarded([&] {
    EGConfig cfg;
    cfg.population_size = options->population_size;
    cfg.sensor_budget = options->sensor_budget;
    cfg.offspring_per_plan = options->offspring_per_plan;
    cfg.seed = options->seed;
    cfg.max_iterations = options->max_iterations;
    cfg.time_budget_ms = options->time_budget_ms;

    RunResult run;
    switch (options->algorithm) {
      case SP_ALGO_EG:
        run = run_eg(idx->idx, cfg);
        break;
      case SP_ALGO_NMG:
        run = run_nmg(idx->idx, cfg);
        break;
      case SP_ALGO_ORACLE:
        run = brute_force_pareto(idx->idx, options->sensor_budget,
                                 options->oracle_cap != 0 ? options->oracle_cap
                                                          : kDefaultOracleCap);
        break;
      default:
        set_error("unknown algorithm");
        return SP_ERR_INVALID_ARGUMENT;
    }
    *out = new sp_result{std::move(run)};
    return SP_OK;
  });
}

SP_API void sp_result_free(sp_result* res) { delete res; }

SP_API uint32_t sp_result_solution_count(const sp_result* res) {
  return res != nullptr ? static_cast<uint32_t>(res->run.solutions.size()) : 0;
}

SP_API sp_status sp_result_solution(const sp_result* res, uint32_t i, uint32_t* out_coverage,
                                    double* out_search_cost, uint64_t* out_plan_count) {
  if (sp_status s = require(res && out_coverage && out_search_cost, "sp_result_solution");
      s != SP_OK)
    return s;
  if (i >= res->run.solutions.size()) return require(false, "solution index out of range");
  const RunResult::Solution& sol = res->run.solutions[i];
  *out_coverage = sol.objectives.coverage;
  *out_search_cost = sol.objectives.search_cost;
  if (out_plan_count != nullptr) *out_plan_count = sol.plan_count;
  return SP_OK;
}

SP_API sp_status sp_result_solution_sensors(const sp_result* res, uint32_t i,
                                            const uint32_t** out_sensors, uint32_t* out_count) {
  if (sp_status s = require(res && out_sensors && out_count, "sp_result_solution_sensors");
      s != SP_OK)
    return s;
  if (i >= res->run.solutions.size()) return require(false, "solution index out of range");
  const std::vector<NodeId>& ids = res->run.solutions[i].plan.sensors();
  *out_sensors = ids.data();
  *out_count = static_cast<uint32_t>(ids.size());
  return SP_OK;
}

SP_API uint32_t sp_result_iterations(const sp_result* res) {
  return res != nullptr ? res->run.iterations : 0;
}

SP_API uint64_t sp_result_evaluations(const sp_result* res) {
  return res != nullptr ? res->run.evaluations : 0;
}

SP_API double sp_result_wall_ms(const sp_result* res) {
  return res != nullptr ? res->run.wall_ms : 0.0;
}

SP_API int sp_result_incomplete(const sp_result* res) {
  return res != nullptr && res->run.incomplete ? 1 : 0;
}

/* ------------------------------------------------------------ hypervolume */

SP_API sp_status sp_bounds_from_points(const uint32_t* coverages, const double* costs,
                                       uint32_t count, sp_bounds* out) {
  if (sp_status s = require(coverages && costs && out && count > 0, "sp_bounds_from_points");
      s != SP_OK)
    return s;
  return guarded([&] {
    std::vector<ObjectiveVector> points(count);
    for (uint32_t i = 0; i < count; ++i) points[i] = ObjectiveVector{coverages[i], costs[i]};
    NormalizationBounds b = NormalizationBounds::from_points(points);
    out->coverage_min = b.coverage_min;
    out->coverage_max = b.coverage_max;
    out->cost_min = b.cost_min;
    out->cost_max = b.cost_max;
    return SP_OK;
  });
}

SP_API sp_status sp_hypervolume(const uint32_t* coverages, const double* costs, uint32_t count,
                                const sp_bounds* bounds, double* out_hv, int* out_clamped) {
  if (sp_status s =
          require(coverages && costs && bounds && out_hv && count > 0, "sp_hypervolume");
      s != SP_OK)
    return s;
  return guarded([&] {
    std::vector<ObjectiveVector> points(count);
    for (uint32_t i = 0; i < count; ++i) points[i] = ObjectiveVector{coverages[i], costs[i]};
    NormalizationBounds b;
    b.coverage_min = bounds->coverage_min;
    b.coverage_max = bounds->coverage_max;
    b.cost_min = bounds->cost_min;
    b.cost_max = bounds->cost_max;
    NormalizedPoints norm = normalize_points(points, b);
    *out_hv = hypervolume_2d(norm.points);
    if (out_clamped != nullptr) *out_clamped = norm.clamped ? 1 : 0;
    return SP_OK;
  });
}

}  // extern "C"
