#include "covnet/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <optional>
#include <queue>
#include <set>

#include "covnet/dismantling.hpp"
#include "covnet/errors.hpp"
#include "covnet/metrics.hpp"
#include "covnet/rng.hpp"

namespace covnet {

namespace {

const std::set<std::string, std::less<>> kScalarMetrics = {
    "density",          "fragmentation",         "average_degree",  "diameter",
    "average_clustering", "degree_centralization", "mean_betweenness"};
constexpr std::string_view kEigenTop = "eigenvector_top";
constexpr std::string_view kGndPrefix = "gnd_prefix";

bool is_list_metric(std::string_view m) { return m == kEigenTop || m == kGndPrefix; }

std::size_t pair_count(std::size_t n) { return n * (n - 1) / 2; }

// Hard constraints resolved to node indices of the sorted label list.
struct ResolvedHard {
  std::size_t n = 0;
  std::size_t m = 0;
  bool connected = false;
  std::vector<std::pair<std::size_t, std::size_t>> degrees;  // node, degree
  std::vector<IndexEdge> adjacencies;
  std::vector<std::pair<IndexEdge, std::size_t>> pair_unions;
  std::vector<std::size_t> top_degree;
};

ResolvedHard resolve(const HardConstraints& hard, const std::vector<std::string>& labels) {
  auto index = [&](const std::string& label) {
    auto it = std::lower_bound(labels.begin(), labels.end(), label);
    if (it == labels.end() || *it != label) {
      throw PreconditionError("constraint names unknown node '" + label + "'");
    }
    return static_cast<std::size_t>(it - labels.begin());
  };
  ResolvedHard r;
  r.n = hard.node_count;
  r.m = hard.edge_count;
  r.connected = hard.connected;
  for (const auto& d : hard.degrees) r.degrees.emplace_back(index(d.node), d.degree);
  for (const auto& [a, b] : hard.adjacencies) r.adjacencies.emplace_back(index(a), index(b));
  for (const auto& u : hard.pair_unions) r.pair_unions.push_back({{index(u.a), index(u.b)}, u.value});
  for (const auto& t : hard.top_degree) r.top_degree.push_back(index(t));
  return r;
}

// Mutable adjacency with O(1) uniform edge / non-edge selection.
class WorkGraph {
 public:
  explicit WorkGraph(std::size_t n) : n_(n), adj_(n * n, 0), pos_(n * n, 0), degree_(n, 0) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        pos_[key(i, j)] = non_edges_.size();
        non_edges_.emplace_back(i, j);
      }
    }
  }

  static WorkGraph from(const LabeledGraph& g) {
    WorkGraph w(g.node_count());
    for (auto e : g.edges()) w.add_edge(e);
    return w;
  }

  std::size_t n() const { return n_; }
  bool has(std::size_t i, std::size_t j) const { return adj_[i * n_ + j] != 0; }
  std::size_t degree(std::size_t i) const { return degree_[i]; }
  const std::vector<IndexEdge>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t non_edge_count() const { return non_edges_.size(); }

  /// Moves non-edge #k into the edge list and returns it.
  IndexEdge add(std::size_t k) {
    const auto e = non_edges_[k];
    swap_out(non_edges_, k);
    pos_[key(e.first, e.second)] = edges_.size();
    edges_.push_back(e);
    set(e, 1);
    return e;
  }

  /// Moves edge #k into the non-edge list and returns it.
  IndexEdge remove(std::size_t k) {
    const auto e = edges_[k];
    swap_out(edges_, k);
    pos_[key(e.first, e.second)] = non_edges_.size();
    non_edges_.push_back(e);
    set(e, 0);
    return e;
  }

  void add_edge(IndexEdge e) { add(pos_[key(e.first, e.second)]); }
  void remove_edge(IndexEdge e) { remove(pos_[key(e.first, e.second)]); }

  /// Swap one uniformly chosen edge for one uniformly chosen non-edge (never
  /// the edge just removed). Returns {removed, added}.
  std::pair<IndexEdge, IndexEdge> random_move(Rng& rng) {
    const auto removed = remove(rng.uniform_index(edges_.size()));
    // the removed edge is the last non-edge; draw among the others
    const auto added = add(rng.uniform_index(non_edges_.size() - 1));
    return {removed, added};
  }

  void undo(std::pair<IndexEdge, IndexEdge> move) {
    remove_edge(move.second);
    add_edge(move.first);
  }

  std::size_t components() const {
    std::vector<bool> seen(n_, false);
    std::vector<std::size_t> stack;
    std::size_t count = 0;
    for (std::size_t s = 0; s < n_; ++s) {
      if (seen[s]) continue;
      ++count;
      seen[s] = true;
      stack.push_back(s);
      while (!stack.empty()) {
        const auto u = stack.back();
        stack.pop_back();
        for (std::size_t v = 0; v < n_; ++v) {
          if (!seen[v] && has(u, v)) {
            seen[v] = true;
            stack.push_back(v);
          }
        }
      }
    }
    return count;
  }

  LabeledGraph to_graph(const std::vector<std::string>& labels) const {
    return LabeledGraph::from_index_edges(labels, edges_);
  }

 private:
  std::size_t key(std::size_t i, std::size_t j) const { return std::min(i, j) * n_ + std::max(i, j); }

  void set(IndexEdge e, std::uint8_t v) {
    adj_[e.first * n_ + e.second] = v;
    adj_[e.second * n_ + e.first] = v;
    if (v) {
      ++degree_[e.first];
      ++degree_[e.second];
    } else {
      --degree_[e.first];
      --degree_[e.second];
    }
  }

  void swap_out(std::vector<IndexEdge>& list, std::size_t k) {
    if (k + 1 != list.size()) {
      list[k] = list.back();
      pos_[key(list[k].first, list[k].second)] = k;
    }
    list.pop_back();
  }

  std::size_t n_;
  std::vector<std::uint8_t> adj_;
  std::vector<std::size_t> pos_;
  std::vector<std::size_t> degree_;
  std::vector<IndexEdge> edges_;
  std::vector<IndexEdge> non_edges_;
};

// Order in which adaptive hub removal would take the first `count` nodes.
std::vector<std::size_t> hub_prefix(const WorkGraph& w, std::size_t count) {
  std::vector<std::size_t> deg(w.n());
  for (std::size_t i = 0; i < w.n(); ++i) deg[i] = w.degree(i);
  std::vector<bool> gone(w.n(), false);
  std::vector<std::size_t> order;
  for (std::size_t step = 0; step < count && step < w.n(); ++step) {
    std::size_t best = SIZE_MAX;
    for (std::size_t i = 0; i < w.n(); ++i) {
      if (!gone[i] && (best == SIZE_MAX || deg[i] > deg[best])) best = i;
    }
    order.push_back(best);
    gone[best] = true;
    for (std::size_t v = 0; v < w.n(); ++v) {
      if (!gone[v] && w.has(best, v)) --deg[v];
    }
  }
  return order;
}

std::size_t union_size(const WorkGraph& w, IndexEdge p) {
  return w.degree(p.first) + w.degree(p.second) - (w.has(p.first, p.second) ? 1 : 0);
}

bool hard_ok(const WorkGraph& w, const ResolvedHard& h) {
  for (auto [node, d] : h.degrees) {
    if (w.degree(node) != d) return false;
  }
  for (auto [a, b] : h.adjacencies) {
    if (!w.has(a, b)) return false;
  }
  for (const auto& [p, v] : h.pair_unions) {
    if (union_size(w, p) != v) return false;
  }
  if (!h.top_degree.empty()) {
    auto prefix = hub_prefix(w, h.top_degree.size());
    std::sort(prefix.begin(), prefix.end());
    auto want = h.top_degree;
    std::sort(want.begin(), want.end());
    if (prefix != want) return false;
  }
  return !h.connected || w.components() == 1;
}

// Graded distance from feasibility; 0 is sufficient but hard_ok is the test.
double violation_score(const WorkGraph& w, const ResolvedHard& h) {
  double score = 0.0;
  auto absdiff = [](std::size_t a, std::size_t b) { return static_cast<double>(a > b ? a - b : b - a); };
  for (auto [node, d] : h.degrees) score += absdiff(w.degree(node), d);
  for (auto [a, b] : h.adjacencies) score += w.has(a, b) ? 0.0 : 1.0;
  for (const auto& [p, v] : h.pair_unions) score += absdiff(union_size(w, p), v);
  if (!h.top_degree.empty()) {
    std::vector<bool> is_top(w.n(), false);
    for (auto t : h.top_degree) is_top[t] = true;
    std::size_t others = 0;
    for (std::size_t i = 0; i < w.n(); ++i) {
      if (!is_top[i]) others = std::max(others, w.degree(i));
    }
    // a margin of |top| survives the degree drops of the earlier removals
    const auto margin = h.top_degree.size();
    for (auto t : h.top_degree) {
      if (w.degree(t) < others + margin) score += static_cast<double>(others + margin - w.degree(t));
    }
  }
  if (h.connected) score += static_cast<double>(w.components() - 1);
  return score;
}

WorkGraph random_graph(std::size_t n, std::size_t m, Rng& rng) {
  WorkGraph w(n);
  for (std::size_t e = 0; e < m; ++e) w.add(rng.uniform_index(w.non_edge_count()));
  return w;
}

WorkGraph find_feasible(const ResolvedHard& h, Rng& rng, std::size_t max_iter) {
  WorkGraph w = random_graph(h.n, h.m, rng);
  if (hard_ok(w, h)) return w;
  if (h.m == 0 || h.m == pair_count(h.n)) throw InfeasibleError("hard constraints cannot be met");
  double score = violation_score(w, h);
  for (std::size_t it = 0; it < max_iter; ++it) {
    const auto move = w.random_move(rng);
    const double next = violation_score(w, h);
    if (next <= score) {
      score = next;
      if (hard_ok(w, h)) return w;
    } else {
      w.undo(move);
    }
  }
  throw InfeasibleError("no graph satisfying the hard constraints was found in " +
                        std::to_string(max_iter) + " descent steps");
}

// Cheap terms first so a bounded evaluation can stop before the spectral ones.
int metric_cost(std::string_view m) {
  if (m == kGndPrefix) return 4;
  if (m == kEigenTop) return 3;
  if (m == "mean_betweenness") return 2;
  if (m == "diameter" || m == "average_clustering") return 1;
  return 0;
}

std::vector<std::size_t> evaluation_order(const SynthesisTarget& target) {
  std::vector<std::size_t> order(target.soft.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return metric_cost(target.soft[a].metric) < metric_cost(target.soft[b].metric);
  });
  return order;
}

constexpr double kNoLimit = std::numeric_limits<double>::infinity();

// Every term is nonnegative, so once the partial sum passes `limit` the total will too.
std::optional<double> bounded_objective(const LabeledGraph& g, const SynthesisTarget& target,
                                        const std::vector<std::size_t>& order, double limit) {
  double total = 0.0;
  for (auto i : order) {
    const auto& s = target.soft[i];
    try {
      const double d = soft_metric(g, s) - (is_list_metric(s.metric) ? 0.0 : s.value);
      total += s.weight * d * d;
    } catch (const PreconditionError&) {
      total += s.weight * target.uncomputable_penalty;
    } catch (const ConvergenceError&) {
      total += s.weight * target.uncomputable_penalty;
    }
    if (total > limit) return std::nullopt;
  }
  return total;
}

SynthesisResult anneal(const SynthesisTarget& target, const ResolvedHard& h,
                       const std::vector<std::string>& labels, const std::optional<LabeledGraph>& initial,
                       std::uint64_t seed) {
  Rng rng(seed);
  WorkGraph w = initial ? WorkGraph::from(*initial) : find_feasible(h, rng, 2'000'000);

  const auto& sched = target.schedule;
  SynthesisResult result;
  LabeledGraph current = w.to_graph(labels);
  const auto order = evaluation_order(target);
  double current_obj = *bounded_objective(current, target, order, kNoLimit);
  result.graph = current;
  result.objective = current_obj;

  double temperature = sched.initial_temperature;
  const bool can_move = w.edge_count() > 0 && w.non_edge_count() > 0;
  for (std::size_t it = 0; it < sched.iterations && can_move && result.objective > 0.0; ++it) {
    const auto move = w.random_move(rng);
    temperature *= sched.cooling_factor;
    if (!hard_ok(w, h)) {
      w.undo(move);
      ++result.rejected_hard;
      continue;
    }
    // Metropolis with the draw taken up front: accept iff obj <= current or obj < current - T ln u
    const double u = rng.uniform_real();
    const double limit = std::max(current_obj, current_obj - temperature * std::log(u));
    LabeledGraph candidate = w.to_graph(labels);
    const auto bounded = bounded_objective(candidate, target, order, limit);
    const bool accept = bounded && (*bounded <= current_obj || *bounded < limit);
    if (accept) {
      const double obj = *bounded;
      ++result.accepted_moves;
      current_obj = obj;
      if (obj < result.objective) {
        result.objective = obj;
        result.graph = std::move(candidate);
      }
    } else {
      w.undo(move);
    }
  }
  return result;
}

}  // namespace

std::vector<std::string> SynthesisTarget::labels() const {
  std::vector<std::string> out;
  if (!roster.empty()) {
    for (const auto& r : roster) out.push_back(r.label);
  } else {
    const auto width = std::to_string(hard.node_count).size();
    for (std::size_t i = 1; i <= hard.node_count; ++i) {
      auto num = std::to_string(i);
      out.push_back("v" + std::string(width - num.size(), '0') + num);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

void SynthesisTarget::validate() const {
  if (hard.node_count == 0) throw PreconditionError("target node_count must be positive");
  if (!roster.empty() && roster.size() != hard.node_count) {
    throw PreconditionError("roster has " + std::to_string(roster.size()) + " entries, node_count is " +
                            std::to_string(hard.node_count));
  }
  const auto names = labels();
  if (std::adjacent_find(names.begin(), names.end()) != names.end()) {
    throw PreconditionError("roster labels must be unique");
  }
  auto known = [&](const std::string& label) {
    if (!std::binary_search(names.begin(), names.end(), label)) {
      throw PreconditionError("target names unknown node '" + label + "'");
    }
  };
  for (const auto& s : soft) {
    if (!(s.weight > 0.0)) throw PreconditionError("soft target weights must be positive");
    if (is_list_metric(s.metric)) {
      if (s.nodes.empty()) throw PreconditionError(s.metric + " needs a node list");
      for (const auto& node : s.nodes) known(node);
    } else if (!kScalarMetrics.contains(s.metric)) {
      throw PreconditionError("unknown soft metric '" + s.metric + "'");
    }
  }
  resolve(hard, names);
  const auto& sc = schedule;
  if (!(sc.cooling_factor > 0.0 && sc.cooling_factor < 1.0)) {
    throw PreconditionError("cooling_factor must lie in (0, 1)");
  }
  if (!(sc.initial_temperature > 0.0)) throw PreconditionError("initial_temperature must be positive");
  if (sc.restarts == 0) throw PreconditionError("restarts must be at least 1");
  if (!(uncomputable_penalty >= 0.0)) throw PreconditionError("uncomputable_penalty must be >= 0");
}

SynthesisTarget chiapas_target() {
  SynthesisTarget t;
  const std::vector<std::pair<std::string, int>> groups = {
      {"Ex", 3}, {"P", 5}, {"Ra", 4}, {"Rv", 2}, {"Re", 4}, {"C", 3},
      {"Co", 3}, {"B", 2}, {"Es", 3}, {"Ps", 3}, {"G", 2}};
  const std::vector<Role> roles = {Role::Exploiter, Role::Participant, Role::Raitero,
                                   Role::RecruiterVictim, Role::Recruiter, Role::Caretaker,
                                   Role::Company, Role::BodyGuard, Role::Estafeta,
                                   Role::PublicServant, Role::Guide};
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (int i = 1; i <= groups[g].second; ++i) {
      t.roster.push_back({groups[g].first + std::to_string(i), roles[g]});
    }
  }
  t.hard.node_count = 34;
  t.hard.edge_count = 225;
  t.hard.connected = true;
  t.hard.degrees = {{"P3", 15}, {"Ra4", 11}};
  t.hard.adjacencies = {{"Ex1", "Ex2"}, {"Ex1", "Ex3"}};
  // 225 - 172 edges leave with Ex1 and P1; 172 = round(0.347 * C(32, 2))
  t.hard.pair_unions = {{"Ex1", "P1", 53}};
  t.hard.top_degree = {"Ex1", "P1"};
  t.soft = {
      {"diameter", 3.0, 1.0, {}},
      {"average_clustering", 0.647, 1.0, {}},
      {"degree_centralization", 0.4432, 1.0, {}},
      {"mean_betweenness", 0.02, 1.0, {}},
      {std::string(kEigenTop), 0.0, 5.0, {"Ex1", "P1", "Rv1"}},
      {std::string(kGndPrefix), 0.0, 5.0, {"P3", "Ra4"}},
  };
  t.schedule = AnnealingSchedule{};
  return t;
}

double soft_metric(const LabeledGraph& g, const SoftTarget& soft) {
  const auto& m = soft.metric;
  if (m == "density") return density(g);
  if (m == "fragmentation") return fragmentation(g);
  if (m == "average_degree") return average_degree(g);
  if (m == "diameter") return static_cast<double>(diameter_lcc(g));
  if (m == "average_clustering") return average_clustering(g);
  if (m == "degree_centralization") return degree_centralization(g);
  if (m == "mean_betweenness") return mean_betweenness(g);
  if (m == kEigenTop) {
    const auto scores = eigenvector_centrality(g);
    std::vector<std::size_t> order(g.node_count());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    const auto k = std::min(soft.nodes.size(), order.size());
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                      [&](std::size_t a, std::size_t b) {
                        const auto sa = scores[static_cast<Eigen::Index>(a)];
                        const auto sb = scores[static_cast<Eigen::Index>(b)];
                        return sa != sb ? sa > sb : a < b;
                      });
    std::size_t missing = 0;
    for (const auto& node : soft.nodes) {
      const auto idx = g.index_of(node);
      if (std::find(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), idx) ==
          order.begin() + static_cast<std::ptrdiff_t>(k)) {
        ++missing;
      }
    }
    return static_cast<double>(missing);
  }
  if (m == kGndPrefix) {
    const auto lcc = induced_subgraph(g, largest_connected_component(g));
    if (lcc.node_count() < 2) throw PreconditionError("gnd_prefix needs a component with an edge");
    const auto picks = gnd_round(lcc, CostVector::degrees(lcc), FiedlerSolver::Dense);
    std::size_t mismatched = 0;
    for (std::size_t i = 0; i < soft.nodes.size(); ++i) {
      mismatched += (i < picks.size() && picks[i] == soft.nodes[i]) ? 0 : 1;
    }
    return static_cast<double>(mismatched);
  }
  throw PreconditionError("unknown soft metric '" + m + "'");
}

double objective(const LabeledGraph& g, const SynthesisTarget& target) {
  return *bounded_objective(g, target, evaluation_order(target), kNoLimit);
}

std::vector<std::string> hard_violations(const LabeledGraph& g, const HardConstraints& hard) {
  std::vector<std::string> out;
  if (g.node_count() != hard.node_count) out.push_back("node count " + std::to_string(g.node_count()));
  if (g.edge_count() != hard.edge_count) out.push_back("edge count " + std::to_string(g.edge_count()));
  for (const auto& d : hard.degrees) {
    if (!g.contains(d.node) || g.degree(d.node) != d.degree) out.push_back("degree of " + d.node);
  }
  for (const auto& [a, b] : hard.adjacencies) {
    if (!g.contains(a) || !g.contains(b) || !g.has_edge(a, b)) out.push_back("adjacency " + a + "-" + b);
  }
  for (const auto& u : hard.pair_unions) {
    if (!g.contains(u.a) || !g.contains(u.b) ||
        g.degree(u.a) + g.degree(u.b) - (g.has_edge(u.a, u.b) ? 1 : 0) != u.value) {
      out.push_back("edge union of " + u.a + " and " + u.b);
    }
  }
  if (!hard.top_degree.empty()) {
    const auto w = WorkGraph::from(g);
    auto prefix = hub_prefix(w, hard.top_degree.size());
    NodeSet got, want(hard.top_degree.begin(), hard.top_degree.end());
    for (auto i : prefix) got.insert(g.label(i));
    if (got != want) out.push_back("top-degree nodes");
  }
  if (hard.connected && !is_connected(g)) out.push_back("connectivity");
  return out;
}

void check_feasibility(const SynthesisTarget& target) {
  const auto& h = target.hard;
  const auto n = h.node_count;
  auto fail = [](const std::string& why) { throw InfeasibleError("infeasible target: " + why); };
  if (h.edge_count > pair_count(n)) {
    fail(std::to_string(h.edge_count) + " edges exceed C(" + std::to_string(n) + ", 2)");
  }
  if (h.connected && n > 1 && h.edge_count < n - 1) fail("too few edges for a connected graph");
  std::map<std::string, std::size_t> fixed;
  std::size_t fixed_sum = 0;
  for (const auto& d : h.degrees) {
    if (d.degree > n - 1) fail("degree of " + d.node + " exceeds n - 1");
    if (h.connected && n > 1 && d.degree == 0) fail(d.node + " must be isolated yet connected");
    auto [it, fresh] = fixed.emplace(d.node, d.degree);
    if (!fresh && it->second != d.degree) fail("conflicting degrees for " + d.node);
    if (fresh) fixed_sum += d.degree;
  }
  if (fixed_sum > 2 * h.edge_count) fail("fixed degrees exceed the degree sum 2m");
  // at most C(k, 2) edges can be shared among the k fixed nodes
  if (fixed_sum > pair_count(fixed.size()) && fixed_sum - pair_count(fixed.size()) > h.edge_count) {
    fail("fixed degrees need more edges than the edge count");
  }
  if (fixed.size() == n && fixed_sum != 2 * h.edge_count) fail("degree sum must equal 2m");
  if (fixed.size() == n && fixed_sum % 2 != 0) fail("degree sum is odd");
  for (const auto& [a, b] : h.adjacencies) {
    if (a == b) fail("required self-loop on " + a);
  }
  if (h.adjacencies.size() > h.edge_count) fail("more required adjacencies than edges");
  for (const auto& u : h.pair_unions) {
    if (n < 2 || u.value > 2 * n - 3) fail("edge union of " + u.a + " and " + u.b + " is too large");
    if (u.value > h.edge_count) fail("edge union exceeds the edge count");
  }
  if (h.top_degree.size() > n) fail("more top-degree nodes than nodes");
}

SynthesisResult synthesize_reference(const SynthesisTarget& target,
                                     const std::optional<LabeledGraph>& initial) {
  target.validate();
  check_feasibility(target);
  const auto labels = target.labels();
  const auto h = resolve(target.hard, labels);

  if (initial) {
    if (initial->labels() != labels) throw PreconditionError("initial graph labels differ from the target");
    if (auto bad = hard_violations(*initial, target.hard); !bad.empty()) {
      throw PreconditionError("initial graph violates hard constraint: " + bad.front());
    }
  }

  const auto& sched = target.schedule;
  std::vector<std::future<SynthesisResult>> chains;
  for (std::size_t r = 0; r < sched.restarts; ++r) {
    chains.push_back(std::async(std::launch::async, [&, r] {
      auto res = anneal(target, h, labels, initial, sched.rng_seed + r);
      res.restart = r;
      return res;
    }));
  }
  std::optional<SynthesisResult> best;
  for (auto& c : chains) {
    auto res = c.get();
    if (!best || res.objective < best->objective) best = std::move(res);
  }

  RoleMap roles;
  for (const auto& r : target.roster) {
    if (r.role) roles.emplace(r.label, *r.role);
  }
  best->graph = best->graph.with_roles(roles);
  best->within_bound = best->objective <= sched.acceptance_bound;
  return *std::move(best);
}

}  // namespace covnet
