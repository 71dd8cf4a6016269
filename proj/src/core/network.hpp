#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "core/types.hpp"

namespace sewerplace {

/// Directed flow edge: `from` is immediately upstream of `to`.
struct FlowEdge {
  NodeId from;
  NodeId to;

  friend bool operator==(const FlowEdge&, const FlowEdge&) = default;
};

/// A sewage network: manholes plus downstream flow edges. Internally nodes
/// carry dense ids in [0, n); external string labels round-trip through the
/// CSV files. A freshly parsed network may still violate the in-tree model —
/// run validate_network before indexing it.
class SewerNetwork {
 public:
  SewerNetwork() = default;

  /// Build from dense ids. Labels default to the decimal id. Throws on
  /// out-of-range edge endpoints or mismatched label/coordinate lengths.
  static SewerNetwork from_parts(std::uint32_t node_count, std::vector<FlowEdge> edges,
                                 std::vector<std::string> labels = {},
                                 std::vector<double> xs = {}, std::vector<double> ys = {});

  std::uint32_t node_count() const noexcept { return n_; }
  std::uint64_t edge_count() const noexcept { return static_cast<std::uint64_t>(edges_.size()); }
  const std::vector<FlowEdge>& edges() const noexcept { return edges_; }

  const std::string& label(NodeId id) const;
  std::optional<NodeId> find(std::string_view label) const;

  bool has_coords() const noexcept { return !xs_.empty(); }
  double x(NodeId id) const;
  double y(NodeId id) const;

 private:
  std::uint32_t n_ = 0;
  std::vector<FlowEdge> edges_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeId> label_to_id_;
  std::vector<double> xs_;
  std::vector<double> ys_;
};

/// Parse the node/edge CSV pair. Node file header is `id` or `id,x,y`;
/// edge file header is `from,to` with flow direction upstream -> downstream.
/// Errors carry the file name and line number.
SewerNetwork parse_network(const std::string& nodes_path, const std::string& edges_path);

/// Stream variant used by tests and in-memory callers; `*_name` only labels
/// error messages.
SewerNetwork parse_network_streams(std::istream& nodes, std::string_view nodes_name,
                                   std::istream& edges, std::string_view edges_name);

/// Write the same CSV pair `parse_network` consumes. Deterministic output.
void save_network(const SewerNetwork& net, const std::string& nodes_path,
                  const std::string& edges_path);

enum class ViolationKind {
  self_loop,
  duplicate_edge,
  split_flow,  // out-degree > 1
  cycle,
};

struct Violation {
  ViolationKind kind;
  std::string message;  // label-resolved, human readable
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
  std::string to_text() const;
  std::string to_json() const;
};

/// Check the in-tree model: no self-loops, no duplicate edges, out-degree
/// at most one everywhere, acyclic. All violations are reported; callers
/// must refuse networks whose report is not ok().
ValidationReport validate_network(const SewerNetwork& net);

const char* violation_kind_name(ViolationKind kind);

}  // namespace sewerplace
