#include "covnet/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>

#include "covnet/errors.hpp"

namespace covnet {

namespace {

constexpr std::string_view kNodeDirective = "#@node";

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

}  // namespace

LabeledGraph LabeledGraph::from_index_edges(std::vector<std::string> sorted_labels,
                                            std::span<const IndexEdge> edges) {
  for (std::size_t i = 1; i < sorted_labels.size(); ++i) {
    if (!(sorted_labels[i - 1] < sorted_labels[i])) {
      throw ParseError("node labels must be unique: '" + sorted_labels[i] + "'");
    }
  }
  LabeledGraph g;
  g.labels_ = std::move(sorted_labels);
  const auto n = g.labels_.size();
  g.adj_.assign(n, {});
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) throw ParseError("edge endpoint outside node set");
    if (u == v) throw ParseError("self-loop on '" + g.labels_[u] + "'");
    g.adj_[u].push_back(v);
    g.adj_[v].push_back(u);
  }
  for (std::size_t i = 0; i < n; ++i) {
    auto& nb = g.adj_[i];
    std::sort(nb.begin(), nb.end());
    if (std::adjacent_find(nb.begin(), nb.end()) != nb.end()) {
      throw ParseError("duplicate edge at '" + g.labels_[i] + "'");
    }
  }
  g.edge_count_ = edges.size();
  return g;
}

LabeledGraph LabeledGraph::from_edges(std::vector<std::string> nodes,
                                      std::span<const std::pair<std::string, std::string>> edges) {
  std::sort(nodes.begin(), nodes.end());
  if (auto dup = std::adjacent_find(nodes.begin(), nodes.end()); dup != nodes.end()) {
    throw ParseError("duplicate node label '" + *dup + "'");
  }
  auto index = [&](const std::string& label) {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), label);
    if (it == nodes.end() || *it != label) {
      throw ParseError("edge endpoint '" + label + "' is not a node");
    }
    return static_cast<std::size_t>(it - nodes.begin());
  };
  std::vector<IndexEdge> idx;
  idx.reserve(edges.size());
  for (const auto& [a, b] : edges) idx.emplace_back(index(a), index(b));
  return from_index_edges(std::move(nodes), idx);
}

std::optional<std::size_t> LabeledGraph::find(std::string_view label) const {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), label,
                             [](const std::string& a, std::string_view b) { return a < b; });
  if (it == labels_.end() || *it != label) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

std::size_t LabeledGraph::index_of(std::string_view label) const {
  if (auto i = find(label)) return *i;
  throw PreconditionError("label '" + std::string(label) + "' is not in the graph");
}

std::size_t LabeledGraph::max_degree() const {
  std::size_t best = 0;
  for (const auto& nb : adj_) best = std::max(best, nb.size());
  return best;
}

bool LabeledGraph::has_edge(std::size_t i, std::size_t j) const {
  const auto& nb = adj_[i];
  return std::binary_search(nb.begin(), nb.end(), j);
}

bool LabeledGraph::has_edge(std::string_view a, std::string_view b) const {
  return has_edge(index_of(a), index_of(b));
}

std::vector<IndexEdge> LabeledGraph::edges() const {
  std::vector<IndexEdge> out;
  out.reserve(edge_count_);
  for (std::size_t i = 0; i < adj_.size(); ++i) {
    for (auto j : adj_[i]) {
      if (i < j) out.emplace_back(i, j);
    }
  }
  return out;
}

RoleMap LabeledGraph::roles() const {
  RoleMap out;
  for (std::size_t i = 0; i < roles_.size(); ++i) {
    if (roles_[i]) out.emplace(labels_[i], *roles_[i]);
  }
  return out;
}

LabeledGraph LabeledGraph::with_roles(const RoleMap& roles) const {
  LabeledGraph g = *this;
  if (roles.empty()) return g;
  if (g.roles_.empty()) g.roles_.assign(g.labels_.size(), std::nullopt);
  for (const auto& [label, role] : roles) g.roles_[index_of(label)] = role;
  return g;
}

// --- I/O ---------------------------------------------------------------------

LabeledGraph load_edge_list(std::istream& in) {
  std::vector<std::string> nodes;
  NodeSet seen;
  std::vector<std::pair<std::string, std::string>> edges;
  std::set<std::pair<std::string, std::string>> edge_keys;

  auto add_node = [&](const std::string& label) {
    if (seen.insert(label).second) nodes.push_back(label);
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (view.starts_with(kNodeDirective)) {
      std::istringstream tokens{std::string(view.substr(kNodeDirective.size()))};
      std::string label, extra;
      if (!(tokens >> label) || (tokens >> extra)) {
        throw ParseError("line " + std::to_string(line_no) + ": malformed node declaration");
      }
      add_node(label);
      continue;
    }
    if (auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    std::istringstream tokens{std::string(view)};
    std::vector<std::string> parts;
    for (std::string t; tokens >> t;) parts.push_back(std::move(t));
    if (parts.empty()) continue;
    if (parts.size() != 2) {
      throw ParseError("line " + std::to_string(line_no) + ": expected two labels, found " +
                       std::to_string(parts.size()));
    }
    if (parts[0] == parts[1]) {
      throw ParseError("line " + std::to_string(line_no) + ": self-loop on '" + parts[0] + "'");
    }
    auto key = std::minmax(parts[0], parts[1]);
    if (!edge_keys.emplace(key.first, key.second).second) {
      throw ParseError("line " + std::to_string(line_no) + ": duplicate edge " + parts[0] + " " +
                       parts[1]);
    }
    add_node(parts[0]);
    add_node(parts[1]);
    edges.emplace_back(parts[0], parts[1]);
  }
  return LabeledGraph::from_edges(std::move(nodes), edges);
}

LabeledGraph load_edge_list_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return load_edge_list(in);
}

LabeledGraph load_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return load_edge_list(in);
}

void write_edge_list(std::ostream& out, const LabeledGraph& g) {
  for (auto [i, j] : g.edges()) out << g.label(i) << ' ' << g.label(j) << '\n';
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    if (g.degree(i) == 0) out << kNodeDirective << ' ' << g.label(i) << '\n';
  }
}

LabeledGraph load_roles(std::istream& in, const LabeledGraph& g) {
  RoleMap roles;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto row = trim(line);
    if (row.empty() || row.front() == '#') continue;
    const auto comma = row.find(',');
    if (comma == std::string::npos || row.find(',', comma + 1) != std::string::npos) {
      throw ParseError("roles line " + std::to_string(line_no) + ": expected 'label,role'");
    }
    const auto label = trim(std::string_view(row).substr(0, comma));
    const auto role = trim(std::string_view(row).substr(comma + 1));
    if (!g.contains(label)) {
      throw ParseError("roles line " + std::to_string(line_no) + ": unknown label '" + label + "'");
    }
    try {
      roles[label] = parse_role(role);
    } catch (const ParseError& e) {
      throw ParseError("roles line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return g.with_roles(roles);
}

LabeledGraph load_roles_text(std::string_view text, const LabeledGraph& g) {
  std::istringstream in{std::string(text)};
  return load_roles(in, g);
}

void write_roles(std::ostream& out, const LabeledGraph& g) {
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    if (auto r = g.role(i)) out << g.label(i) << ',' << to_string(*r) << '\n';
  }
}

// --- structure ---------------------------------------------------------------

LabeledGraph induced_subgraph(const LabeledGraph& g, const NodeSet& keep) {
  std::vector<std::size_t> remap(g.node_count(), SIZE_MAX);
  std::vector<std::string> labels;
  labels.reserve(keep.size());
  for (const auto& label : keep) {
    remap[g.index_of(label)] = labels.size();
    labels.push_back(label);
  }
  std::vector<IndexEdge> edges;
  for (auto [i, j] : g.edges()) {
    if (remap[i] != SIZE_MAX && remap[j] != SIZE_MAX) edges.emplace_back(remap[i], remap[j]);
  }
  auto out = LabeledGraph::from_index_edges(std::move(labels), edges);
  if (!g.roles_.empty()) {
    out.roles_.assign(out.node_count(), std::nullopt);
    for (std::size_t i = 0; i < g.node_count(); ++i) {
      if (remap[i] != SIZE_MAX) out.roles_[remap[i]] = g.roles_[i];
    }
  }
  return out;
}

LabeledGraph remove_nodes(const LabeledGraph& g, const NodeSet& removed) {
  for (const auto& label : removed) g.index_of(label);
  NodeSet keep;
  for (const auto& label : g.labels()) {
    if (!removed.contains(label)) keep.insert(keep.end(), label);
  }
  return induced_subgraph(g, keep);
}

std::vector<std::size_t> component_ids(const LabeledGraph& g) {
  const auto n = g.node_count();
  std::vector<std::size_t> id(n, SIZE_MAX);
  std::size_t next = 0;
  std::queue<std::size_t> frontier;
  for (std::size_t s = 0; s < n; ++s) {
    if (id[s] != SIZE_MAX) continue;
    id[s] = next;
    frontier.push(s);
    while (!frontier.empty()) {
      const auto u = frontier.front();
      frontier.pop();
      for (auto v : g.neighbors(u)) {
        if (id[v] == SIZE_MAX) {
          id[v] = next;
          frontier.push(v);
        }
      }
    }
    ++next;
  }
  return id;
}

std::vector<std::size_t> largest_component_indices(const LabeledGraph& g) {
  const auto id = component_ids(g);
  if (id.empty()) return {};
  std::vector<std::size_t> size(*std::max_element(id.begin(), id.end()) + 1, 0);
  for (auto c : id) ++size[c];
  // ids follow smallest member, so the first maximum is the lexicographic winner
  const auto best = static_cast<std::size_t>(std::max_element(size.begin(), size.end()) - size.begin());
  std::vector<std::size_t> out;
  out.reserve(size[best]);
  for (std::size_t i = 0; i < id.size(); ++i) {
    if (id[i] == best) out.push_back(i);
  }
  return out;
}

NodeSet largest_connected_component(const LabeledGraph& g) {
  NodeSet out;
  for (auto i : largest_component_indices(g)) out.insert(out.end(), g.label(i));
  return out;
}

std::size_t lcc_size(const LabeledGraph& g) { return largest_component_indices(g).size(); }

bool is_connected(const LabeledGraph& g) {
  return g.node_count() > 0 && lcc_size(g) == g.node_count();
}

}  // namespace covnet
