#include "core/network.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

namespace sewerplace {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) {
    s.remove_suffix(1);
  }
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  return s;
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(trim(line.substr(start)));
      break;
    }
    fields.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return fields;
}

[[noreturn]] void parse_fail(std::string_view file, std::size_t line_no, const std::string& what) {
  fail(ErrorKind::parse, std::string(file) + ":" + std::to_string(line_no) + ": " + what);
}

double parse_double(std::string_view field, std::string_view file, std::size_t line_no,
                    const char* what) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    parse_fail(file, line_no, std::string("malformed ") + what + " '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace

SewerNetwork SewerNetwork::from_parts(std::uint32_t node_count, std::vector<FlowEdge> edges,
                                      std::vector<std::string> labels, std::vector<double> xs,
                                      std::vector<double> ys) {
  for (const FlowEdge& e : edges) {
    if (e.from >= node_count || e.to >= node_count) {
      fail(ErrorKind::invalid_argument, "edge endpoint out of range");
    }
  }
  if (labels.empty()) {
    labels.reserve(node_count);
    for (std::uint32_t i = 0; i < node_count; ++i) {
      labels.push_back(std::to_string(i));
    }
  } else if (labels.size() != node_count) {
    fail(ErrorKind::invalid_argument, "label count does not match node count");
  }
  if (xs.size() != ys.size() || (!xs.empty() && xs.size() != node_count)) {
    fail(ErrorKind::invalid_argument, "coordinate arrays must be empty or node-sized");
  }

  SewerNetwork net;
  net.n_ = node_count;
  net.edges_ = std::move(edges);
  net.labels_ = std::move(labels);
  net.xs_ = std::move(xs);
  net.ys_ = std::move(ys);
  net.label_to_id_.reserve(node_count);
  for (std::uint32_t i = 0; i < node_count; ++i) {
    auto [it, inserted] = net.label_to_id_.emplace(net.labels_[i], i);
    if (!inserted) {
      fail(ErrorKind::invalid_argument, "duplicate node label '" + net.labels_[i] + "'");
    }
  }
  return net;
}

const std::string& SewerNetwork::label(NodeId id) const {
  if (id >= n_) {
    fail(ErrorKind::invalid_argument, "node id out of range");
  }
  return labels_[id];
}

std::optional<NodeId> SewerNetwork::find(std::string_view label) const {
  auto it = label_to_id_.find(std::string(label));
  if (it == label_to_id_.end()) {
    return std::nullopt;
  }
  return it->second;
}

double SewerNetwork::x(NodeId id) const {
  if (!has_coords() || id >= n_) {
    fail(ErrorKind::invalid_argument, "no coordinate for node");
  }
  return xs_[id];
}

double SewerNetwork::y(NodeId id) const {
  if (!has_coords() || id >= n_) {
    fail(ErrorKind::invalid_argument, "no coordinate for node");
  }
  return ys_[id];
}

SewerNetwork parse_network_streams(std::istream& nodes, std::string_view nodes_name,
                                   std::istream& edges, std::string_view edges_name) {
  std::vector<std::string> labels;
  std::vector<double> xs;
  std::vector<double> ys;
  std::unordered_map<std::string, NodeId> ids;

  std::string line;
  std::size_t line_no = 0;
  bool with_coords = false;

  if (!std::getline(nodes, line)) {
    parse_fail(nodes_name, 1, "empty node file");
  }
  ++line_no;
  {
    auto header = split_csv(line);
    if (header.size() == 1 && header[0] == "id") {
      with_coords = false;
    } else if (header.size() == 3 && header[0] == "id" && header[1] == "x" && header[2] == "y") {
      with_coords = true;
    } else {
      parse_fail(nodes_name, 1, "node header must be 'id' or 'id,x,y'");
    }
  }
  while (std::getline(nodes, line)) {
    ++line_no;
    if (trim(line).empty()) {
      continue;
    }
    auto fields = split_csv(line);
    if (fields.size() != (with_coords ? 3u : 1u)) {
      parse_fail(nodes_name, line_no, "expected " + std::to_string(with_coords ? 3 : 1) +
                                          " fields, got " + std::to_string(fields.size()));
    }
    if (fields[0].empty()) {
      parse_fail(nodes_name, line_no, "empty node label");
    }
    std::string label(fields[0]);
    auto id = static_cast<NodeId>(labels.size());
    if (!ids.emplace(label, id).second) {
      parse_fail(nodes_name, line_no, "duplicate label '" + label + "'");
    }
    labels.push_back(std::move(label));
    if (with_coords) {
      xs.push_back(parse_double(fields[1], nodes_name, line_no, "x coordinate"));
      ys.push_back(parse_double(fields[2], nodes_name, line_no, "y coordinate"));
    }
  }

  std::vector<FlowEdge> edge_list;
  line_no = 0;
  if (!std::getline(edges, line)) {
    parse_fail(edges_name, 1, "empty edge file");
  }
  ++line_no;
  {
    auto header = split_csv(line);
    if (header.size() != 2 || header[0] != "from" || header[1] != "to") {
      parse_fail(edges_name, 1, "edge header must be 'from,to'");
    }
  }
  while (std::getline(edges, line)) {
    ++line_no;
    if (trim(line).empty()) {
      continue;
    }
    auto fields = split_csv(line);
    if (fields.size() != 2) {
      parse_fail(edges_name, line_no,
                 "expected 2 fields, got " + std::to_string(fields.size()));
    }
    auto resolve = [&](std::string_view label) -> NodeId {
      auto it = ids.find(std::string(label));
      if (it == ids.end()) {
        parse_fail(edges_name, line_no, "unknown node '" + std::string(label) + "'");
      }
      return it->second;
    };
    edge_list.push_back(FlowEdge{resolve(fields[0]), resolve(fields[1])});
  }

  const auto node_count = static_cast<std::uint32_t>(labels.size());
  return SewerNetwork::from_parts(node_count, std::move(edge_list), std::move(labels),
                                  std::move(xs), std::move(ys));
}

SewerNetwork parse_network(const std::string& nodes_path, const std::string& edges_path) {
  std::ifstream nodes(nodes_path);
  if (!nodes) {
    fail(ErrorKind::io, "cannot open node file '" + nodes_path + "'");
  }
  std::ifstream edges(edges_path);
  if (!edges) {
    fail(ErrorKind::io, "cannot open edge file '" + edges_path + "'");
  }
  return parse_network_streams(nodes, nodes_path, edges, edges_path);
}

void save_network(const SewerNetwork& net, const std::string& nodes_path,
                  const std::string& edges_path) {
  std::ofstream nodes(nodes_path);
  if (!nodes) {
    fail(ErrorKind::io, "cannot write node file '" + nodes_path + "'");
  }
  const bool coords = net.has_coords();
  nodes << (coords ? "id,x,y\n" : "id\n");
  char buf[64];
  for (NodeId i = 0; i < net.node_count(); ++i) {
    nodes << net.label(i);
    if (coords) {
      auto put = [&](double v) {
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
        (void)ec;
        nodes << ',' << std::string_view(buf, static_cast<std::size_t>(ptr - buf));
      };
      put(net.x(i));
      put(net.y(i));
    }
    nodes << '\n';
  }
  if (!nodes) {
    fail(ErrorKind::io, "write failed for '" + nodes_path + "'");
  }

  std::ofstream edges(edges_path);
  if (!edges) {
    fail(ErrorKind::io, "cannot write edge file '" + edges_path + "'");
  }
  edges << "from,to\n";
  for (const FlowEdge& e : net.edges()) {
    edges << net.label(e.from) << ',' << net.label(e.to) << '\n';
  }
  if (!edges) {
    fail(ErrorKind::io, "write failed for '" + edges_path + "'");
  }
}

const char* violation_kind_name(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::self_loop:
      return "self_loop";
    case ViolationKind::duplicate_edge:
      return "duplicate_edge";
    case ViolationKind::split_flow:
      return "split_flow";
    case ViolationKind::cycle:
      return "cycle";
  }
  return "unknown";
}

ValidationReport validate_network(const SewerNetwork& net) {
  ValidationReport report;
  const auto n = net.node_count();

  std::vector<std::uint32_t> out_degree(n, 0);
  std::unordered_set<std::uint64_t> seen_edges;
  std::unordered_set<std::uint64_t> reported_dups;
  for (const FlowEdge& e : net.edges()) {
    if (e.from == e.to) {
      report.violations.push_back(
          {ViolationKind::self_loop, "self-loop at " + net.label(e.from)});
    }
    std::uint64_t key = (static_cast<std::uint64_t>(e.from) << 32) | e.to;
    if (!seen_edges.insert(key).second && reported_dups.insert(key).second) {
      report.violations.push_back(
          {ViolationKind::duplicate_edge,
           "duplicate edge " + net.label(e.from) + " -> " + net.label(e.to)});
    }
    ++out_degree[e.from];
  }
  for (NodeId v = 0; v < n; ++v) {
    if (out_degree[v] > 1) {
      report.violations.push_back(
          {ViolationKind::split_flow,
           "out-degree " + std::to_string(out_degree[v]) + " at " + net.label(v)});
    }
  }

  // Kahn peeling on out-degree: nodes never peeled sit on a cycle.
  std::vector<std::uint32_t> unprocessed_out(out_degree);
  std::vector<std::vector<NodeId>> upstream_of(n);
  for (const FlowEdge& e : net.edges()) {
    upstream_of[e.to].push_back(e.from);
  }
  std::vector<NodeId> stack;
  for (NodeId v = 0; v < n; ++v) {
    if (unprocessed_out[v] == 0) {
      stack.push_back(v);
    }
  }
  std::size_t peeled = 0;
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    ++peeled;
    for (NodeId u : upstream_of[v]) {
      if (--unprocessed_out[u] == 0) {
        stack.push_back(u);
      }
    }
  }
  if (peeled < n) {
    std::vector<NodeId> cyclic;
    for (NodeId v = 0; v < n; ++v) {
      if (unprocessed_out[v] > 0) {
        cyclic.push_back(v);
      }
    }
    std::string listed;
    for (std::size_t i = 0; i < cyclic.size() && i < 16; ++i) {
      if (i) {
        listed += ", ";
      }
      listed += net.label(cyclic[i]);
    }
    if (cyclic.size() > 16) {
      listed += ", ...";
    }
    report.violations.push_back({ViolationKind::cycle, "cycle involving " + listed});
  }

  return report;
}

std::string ValidationReport::to_text() const {
  if (ok()) {
    return "valid\n";
  }
  std::ostringstream out;
  out << violations.size() << " violation(s):\n";
  for (const Violation& v : violations) {
    out << "  [" << violation_kind_name(v.kind) << "] " << v.message << '\n';
  }
  return out.str();
}

std::string ValidationReport::to_json() const {
  nlohmann::json j;
  j["ok"] = ok();
  j["violations"] = nlohmann::json::array();
  for (const Violation& v : violations) {
    j["violations"].push_back({{"kind", violation_kind_name(v.kind)}, {"message", v.message}});
  }
  return j.dump(2);
}

}  // namespace sewerplace
