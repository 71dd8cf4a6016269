#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "sewerplace/sewerplace.h"

namespace spcli {

// Branching probabilities used when no distribution is supplied; P(k) is the
// chance of a node having k immediate upstream neighbors.
inline const std::vector<double> kDefaultBranchingProbabilities{0.5, 0.3, 0.15, 0.05};

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitBudget = 4;

/// Thrown by command implementations; main() turns it into an exit code.
struct CliError : std::runtime_error {
  CliError(int code, const std::string& message) : std::runtime_error(message), exit_code(code) {}
  int exit_code;
};

[[noreturn]] inline void die(int code, const std::string& message) {
  throw CliError(code, message);
}

/// Exit code for a failed library call.
int exit_code_for(sp_status status);

/// Throws CliError carrying sp_last_error() when `status` is not SP_OK.
void check(sp_status status, const std::string& context);

struct NetworkDeleter {
  void operator()(sp_network* p) const { sp_network_free(p); }
};
struct IndexDeleter {
  void operator()(sp_index* p) const { sp_index_free(p); }
};
struct ResultDeleter {
  void operator()(sp_result* p) const { sp_result_free(p); }
};

using NetworkHandle = std::unique_ptr<sp_network, NetworkDeleter>;
using IndexHandle = std::unique_ptr<sp_index, IndexDeleter>;
using ResultHandle = std::unique_ptr<sp_result, ResultDeleter>;

/// Loads `<dir>/nodes.csv` + `<dir>/edges.csv`.
NetworkHandle load_network_dir(const std::string& dir);

/// Validates and indexes; data errors exit with kExitData.
IndexHandle build_index(const sp_network* net);

/// FNV-1a (64-bit) over the raw bytes of a file, as "fnv1a64:<hex>".
std::string file_digest(const std::string& path);

/// Shortest float form with 6 significant digits ("%.6g").
std::string format_g6(double v);

/// One objective row parsed back from a solutions CSV.
struct SolutionPoint {
  std::uint32_t coverage;
  double search_cost;
};

/// Reads the `coverage` and `search_cost` columns of a solutions CSV written
/// by `optimize`. Empty or malformed files exit with kExitData.
std::vector<SolutionPoint> read_solution_points(const std::string& path);

/// Writes pretty JSON with a trailing newline; IO failures exit kExitData.
void write_json_file(const std::string& path, const nlohmann::ordered_json& doc);

nlohmann::ordered_json read_json_file(const std::string& path);

/// True when SEWERPLACE_LOG=debug; gates progress notes on stderr.
bool debug_log_enabled();
void log_debug(const std::string& message);

}  // namespace spcli
