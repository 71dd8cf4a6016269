/* sewerplace — optimal sensor placement on sewage networks.
 *
 * C interface to the core library. All functions returning sp_status set a
 * thread-local error message retrievable via sp_last_error() on failure.
 * Handles are opaque; every *_free function accepts NULL.
 */
#ifndef SEWERPLACE_H
#define SEWERPLACE_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define SP_API __declspec(dllexport)
#else
#define SP_API __attribute__((visibility("default")))
#endif

#define SP_VERSION_STRING "0.1.0"

typedef enum sp_status {
  SP_OK = 0,
  SP_ERR_INVALID_ARGUMENT = 1, /* bad parameter or contract violation */
  SP_ERR_PARSE = 2,            /* malformed input file */
  SP_ERR_VALIDATION = 3,       /* network breaks the in-tree model */
  SP_ERR_IO = 4,               /* file system failure */
  SP_ERR_CAP_EXCEEDED = 5,     /* enumeration or budget cap hit */
  SP_ERR_NOT_FOUND = 6,        /* lookup miss (e.g. unknown label) */
  SP_ERR_INTERNAL = 7          /* unexpected failure */
} sp_status;

/* Library version ("major.minor.patch"). */
SP_API const char* sp_version(void);

/* Message for the most recent failure on the calling thread. Never NULL;
 * empty string when nothing failed yet. Valid until the next failing call. */
SP_API const char* sp_last_error(void);

/* Frees a string returned through a char** out-parameter. */
SP_API void sp_string_free(char* s);

/* Frees an array returned through an out-parameter (e.g. probabilities). */
SP_API void sp_buffer_free(void* p);

/* ---------------------------------------------------------------- network */

typedef struct sp_network sp_network;

/* Parse a node/edge CSV pair. Node header `id` or `id,x,y`; edge header
 * `from,to`, flow directed upstream -> downstream. */
SP_API sp_status sp_network_load(const char* nodes_csv_path, const char* edges_csv_path,
                                 sp_network** out);

SP_API sp_status sp_network_save(const sp_network* net, const char* nodes_csv_path,
                                 const char* edges_csv_path);

SP_API void sp_network_free(sp_network* net);

SP_API uint32_t sp_network_node_count(const sp_network* net);
SP_API uint64_t sp_network_edge_count(const sp_network* net);

/* Label of a node; the pointer stays valid while the handle lives. */
SP_API sp_status sp_network_label(const sp_network* net, uint32_t node, const char** out_label);

/* Dense id for a label; SP_ERR_NOT_FOUND if absent. */
SP_API sp_status sp_network_find_label(const sp_network* net, const char* label,
                                       uint32_t* out_node);

SP_API sp_status sp_network_has_coords(const sp_network* net, int* out_has);
SP_API sp_status sp_network_coord(const sp_network* net, uint32_t node, double* out_x,
                                  double* out_y);

/* In-tree model check. *out_ok is 1 when the network is clean. The report
 * (text, or JSON when as_json != 0) lists one line per violation; free it
 * with sp_string_free. Either out pointer may be NULL. */
SP_API sp_status sp_network_validate(const sp_network* net, int as_json, char** out_report,
                                     int* out_ok);

/* Monte Carlo in-tree generator. `probabilities` holds P(0..count-1) over a
 * node's immediate-upstream child count and must sum to 1; pass NULL/0 for
 * the built-in default distribution. */
SP_API sp_status sp_network_generate(uint32_t node_count, uint64_t seed,
                                     const double* probabilities, uint32_t probability_count,
                                     sp_network** out);

/* Empirical branching distribution (normalized in-degree histogram). The
 * array is allocated for the caller; free with sp_buffer_free. */
SP_API sp_status sp_network_fit_branching(const sp_network* net, double** out_probabilities,
                                          uint32_t* out_count);

/* ------------------------------------------------------------------ index */

typedef struct sp_index sp_index;

/* Validate and index a network for upstream queries. The index is
 * self-contained; the network handle may be freed afterwards. */
SP_API sp_status sp_index_build(const sp_network* net, sp_index** out);

SP_API void sp_index_free(sp_index* idx);

SP_API uint32_t sp_index_node_count(const sp_index* idx);

/* *out = 1 iff j is strictly upstream of i; a node is never upstream of
 * itself. */
SP_API sp_status sp_index_is_upstream(const sp_index* idx, uint32_t j, uint32_t i, int* out);

/* Number of nodes whose water passes through i, including i itself. */
SP_API sp_status sp_index_upstream_closure_size(const sp_index* idx, uint32_t i,
                                                uint32_t* out_size);

/* ------------------------------------------------------------- objectives */

/* Coverage (count of covered manholes) and expected search cost (bits) of a
 * sensor placement. `sensors` lists distinct node ids in any order. */
SP_API sp_status sp_evaluate_plan(const sp_index* idx, const uint32_t* sensors,
                                  uint32_t sensor_count, uint32_t* out_coverage,
                                  double* out_search_cost);

/* Entry-set size m_i per sensor, aligned with the input order. */
SP_API sp_status sp_entry_set_sizes(const sp_index* idx, const uint32_t* sensors,
                                    uint32_t sensor_count, uint32_t* out_sizes);

/* Owner sensor of every node (length node_count), SP_NO_OWNER if uncovered. */
#define SP_NO_OWNER UINT32_MAX
SP_API sp_status sp_assign_entry_sets(const sp_index* idx, const uint32_t* sensors,
                                      uint32_t sensor_count, uint32_t* out_owner);

/* ----------------------------------------------------------------- search */

typedef enum sp_algorithm {
  SP_ALGO_EG = 0,    /* evolutionary greedy: x sampled offspring per plan */
  SP_ALGO_NMG = 1,   /* baseline: all single-addition offspring per plan */
  SP_ALGO_ORACLE = 2 /* exhaustive Pareto front over all size-S plans */
} sp_algorithm;

typedef struct sp_run_options {
  sp_algorithm algorithm;
  uint32_t population_size;   /* N; also the target final-front size */
  uint32_t sensor_budget;     /* S */
  uint32_t offspring_per_plan; /* x; EG only */
  uint64_t seed;              /* EG only */
  uint32_t max_iterations;    /* 0 -> 10 * S */
  uint64_t oracle_cap;        /* 0 -> default 2e6; oracle only */
  double time_budget_ms;      /* 0 -> unlimited; EG/NMG only */
} sp_run_options;

typedef struct sp_result sp_result;

SP_API sp_status sp_run(const sp_index* idx, const sp_run_options* options, sp_result** out);

SP_API void sp_result_free(sp_result* res);

SP_API uint32_t sp_result_solution_count(const sp_result* res);

/* Objectives of solution i; out_plan_count (oracle: number of plans sharing
 * this objective vector, otherwise 1) may be NULL. */
SP_API sp_status sp_result_solution(const sp_result* res, uint32_t i, uint32_t* out_coverage,
                                    double* out_search_cost, uint64_t* out_plan_count);

/* Sensor ids of solution i, ascending; pointer valid while the result lives. */
SP_API sp_status sp_result_solution_sensors(const sp_result* res, uint32_t i,
                                            const uint32_t** out_sensors, uint32_t* out_count);

SP_API uint32_t sp_result_iterations(const sp_result* res);
SP_API uint64_t sp_result_evaluations(const sp_result* res);
SP_API double sp_result_wall_ms(const sp_result* res);
/* 1 when the run hit its iteration/time cap before the stopping rule. */
SP_API int sp_result_incomplete(const sp_result* res);

/* ------------------------------------------------------------ hypervolume */

typedef struct sp_bounds {
  double coverage_min;
  double coverage_max;
  double cost_min;
  double cost_max;
} sp_bounds;

/* Componentwise min/max over a non-empty point set. */
SP_API sp_status sp_bounds_from_points(const uint32_t* coverages, const double* costs,
                                       uint32_t count, sp_bounds* out);

/* 2-D hypervolume against reference point (1,1) after max-min normalization
 * into the unit square (coverage flipped so lower is better; values outside
 * the bounds are clamped and flagged via out_clamped, which may be NULL). */
SP_API sp_status sp_hypervolume(const uint32_t* coverages, const double* costs, uint32_t count,
                                const sp_bounds* bounds, double* out_hv, int* out_clamped);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SEWERPLACE_H */
