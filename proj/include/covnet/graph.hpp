#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "covnet/role.hpp"

namespace covnet {

/// Ordered set of node labels. Ordering is lexicographic, which is also the
/// tie-break order used throughout the library.
using NodeSet = std::set<std::string, std::less<>>;

using RoleMap = std::map<std::string, Role, std::less<>>;

using IndexEdge = std::pair<std::size_t, std::size_t>;

/**
 * Simple undirected graph keyed by string labels.
 *
 * Labels are kept sorted, so node index i is the i-th label in lexicographic
 * order. Indices are stable only within one graph value; every operation that
 * returns a new graph renumbers. Values are immutable once built.
 */
class LabeledGraph {
 public:
  LabeledGraph() = default;

  /// Validates labels and edges; throws ParseError on a duplicate label,
  /// self-loop, duplicate edge or an endpoint missing from `nodes`.
  static LabeledGraph from_edges(std::vector<std::string> nodes,
                                 std::span<const std::pair<std::string, std::string>> edges);

  /// Fast path for internal builders: `sorted_labels` must already be sorted
  /// and unique, edges index into it. Invariants are still checked.
  static LabeledGraph from_index_edges(std::vector<std::string> sorted_labels,
                                       std::span<const IndexEdge> edges);

  std::size_t node_count() const { return labels_.size(); }
  std::size_t edge_count() const { return edge_count_; }
  bool empty() const { return labels_.empty(); }

  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_[i]; }

  std::optional<std::size_t> find(std::string_view label) const;
  bool contains(std::string_view label) const { return find(label).has_value(); }
  /// Throws PreconditionError for unknown labels.
  std::size_t index_of(std::string_view label) const;

  std::span<const std::size_t> neighbors(std::size_t i) const { return adj_[i]; }
  std::size_t degree(std::size_t i) const { return adj_[i].size(); }
  std::size_t degree(std::string_view label) const { return degree(index_of(label)); }
  std::size_t max_degree() const;

  bool has_edge(std::size_t i, std::size_t j) const;
  bool has_edge(std::string_view a, std::string_view b) const;

  /// All edges as (i, j) with i < j, in lexicographic order.
  std::vector<IndexEdge> edges() const;

  std::optional<Role> role(std::size_t i) const { return roles_.empty() ? std::nullopt : roles_[i]; }
  std::optional<Role> role(std::string_view label) const { return role(index_of(label)); }
  RoleMap roles() const;

  /// Copy with `roles` attached; unknown labels throw PreconditionError.
  LabeledGraph with_roles(const RoleMap& roles) const;

  NodeSet node_set() const { return NodeSet(labels_.begin(), labels_.end()); }

  bool operator==(const LabeledGraph&) const = default;

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<std::optional<Role>> roles_;  // empty when no roles are attached
  std::size_t edge_count_ = 0;

  friend LabeledGraph induced_subgraph(const LabeledGraph& g, const NodeSet& keep);
};

/// Reads the whitespace edge-list format. A line `#@node LABEL` declares an
/// isolated node; every other `#` starts a comment.
LabeledGraph load_edge_list(std::istream& in);
LabeledGraph load_edge_list_text(std::string_view text);
LabeledGraph load_edge_list_file(const std::string& path);

/// Writes edges in lexicographic order, then `#@node` lines for isolated nodes.
void write_edge_list(std::ostream& out, const LabeledGraph& g);

/// Attaches `label,role` CSV rows. Nodes without a row keep no role.
LabeledGraph load_roles(std::istream& in, const LabeledGraph& g);
LabeledGraph load_roles_text(std::string_view text, const LabeledGraph& g);

/// Writes `label,role` for every node with a role.
void write_roles(std::ostream& out, const LabeledGraph& g);

/// Induced subgraph on nodes(g) minus `removed`. Unknown labels throw.
LabeledGraph remove_nodes(const LabeledGraph& g, const NodeSet& removed);

/// Induced subgraph on `keep`. Unknown labels throw.
LabeledGraph induced_subgraph(const LabeledGraph& g, const NodeSet& keep);

/// Component id per node index; ids are assigned in order of smallest member.
std::vector<std::size_t> component_ids(const LabeledGraph& g);

/// Indices of a maximum-cardinality component. Equal sizes resolve to the
/// component holding the lexicographically smallest label.
std::vector<std::size_t> largest_component_indices(const LabeledGraph& g);

NodeSet largest_connected_component(const LabeledGraph& g);

std::size_t lcc_size(const LabeledGraph& g);

bool is_connected(const LabeledGraph& g);

}  // namespace covnet
