#include "common.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace spcli {

int exit_code_for(sp_status status) {
  switch (status) {
    case SP_OK:
      return kExitOk;
    case SP_ERR_CAP_EXCEEDED:
      return kExitBudget;
    default:
      return kExitData;
  }
}

void check(sp_status status, const std::string& context) {
  if (status == SP_OK) return;
  die(exit_code_for(status), context + ": " + sp_last_error());
}

NetworkHandle load_network_dir(const std::string& dir) {
  std::string base = dir;
  while (!base.empty() && base.back() == '/') base.pop_back();
  if (base.empty()) base = "/";
  sp_network* raw = nullptr;
  check(sp_network_load((base + "/nodes.csv").c_str(), (base + "/edges.csv").c_str(), &raw),
        "loading network from " + dir);
  log_debug("loaded network: " + std::to_string(sp_network_node_count(raw)) + " nodes, " +
            std::to_string(sp_network_edge_count(raw)) + " edges");
  return NetworkHandle(raw);
}

IndexHandle build_index(const sp_network* net) {
  sp_index* raw = nullptr;
  check(sp_index_build(net, &raw), "indexing network");
  return IndexHandle(raw);
}

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) die(kExitData, "cannot open file for digest: " + path);
  std::uint64_t h = 1469598103934665603ULL;
  char buf[1 << 16];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    const std::streamsize got = in.gcount();
    for (std::streamsize i = 0; i < got; ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 1099511628211ULL;
    }
  }
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + hex;
}

std::string format_g6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::vector<SolutionPoint> read_solution_points(const std::string& path) {
  std::ifstream in(path);
  if (!in) die(kExitData, "cannot open solution file: " + path);
  std::string line;
  if (!std::getline(in, line)) die(kExitData, "empty solution file: " + path);
  // Tolerate a trailing \r from files edited on other platforms.
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "plan_id,coverage,search_cost,sensors")
    die(kExitData, path + ": unexpected header '" + line + "'");

  std::vector<SolutionPoint> points;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string plan_id, coverage, cost;
    if (!std::getline(row, plan_id, ',') || !std::getline(row, coverage, ',') ||
        !std::getline(row, cost, ','))
      die(kExitData, path + ":" + std::to_string(line_no) + ": malformed row");
    try {
      points.push_back(SolutionPoint{static_cast<std::uint32_t>(std::stoul(coverage)),
                                     std::stod(cost)});
    } catch (const std::exception&) {
      die(kExitData, path + ":" + std::to_string(line_no) + ": malformed numeric field");
    }
  }
  if (points.empty()) die(kExitData, path + ": no solutions");
  return points;
}

void write_json_file(const std::string& path, const nlohmann::ordered_json& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) die(kExitData, "cannot write " + path);
  out << doc.dump(2) << '\n';
  if (!out) die(kExitData, "write failed: " + path);
}

nlohmann::ordered_json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) die(kExitData, "cannot open " + path);
  try {
    return nlohmann::ordered_json::parse(in);
  } catch (const std::exception& e) {
    die(kExitData, path + ": " + e.what());
  }
}

bool debug_log_enabled() {
  const char* v = std::getenv("SEWERPLACE_LOG");
  return v != nullptr && std::string(v) == "debug";
}

void log_debug(const std::string& message) {
  if (debug_log_enabled()) std::cerr << "[sewerplace] " << message << '\n';
}

}  // namespace spcli
