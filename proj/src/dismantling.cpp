#include "covnet/dismantling.hpp"

#include <algorithm>
#include <string>

#include "covnet/errors.hpp"
#include "covnet/rng.hpp"

namespace covnet {

namespace {

// Absorbs rounding in target * n0 so that e.g. 0.5 * 34 compares as 17.
constexpr double kThresholdSlack = 1e-9;

bool above_target(std::size_t lcc, double target_nodes) {
  return static_cast<double>(lcc) > target_nodes + kThresholdSlack;
}

class TraceBuilder {
 public:
  TraceBuilder(const LabeledGraph& original, CostModel model)
      : original_(original), residual_(original), model_(model) {}

  const LabeledGraph& residual() const { return residual_; }
  std::vector<RemovalStep>& steps() { return steps_; }

  void remove(const std::string& label) {
    RemovalStep step;
    step.node = label;
    step.cost = model_ == CostModel::Residual ? residual_.degree(label) : original_.degree(label);
    residual_ = remove_nodes(residual_, NodeSet{label});
    cumulative_ += step.cost;
    step.cumulative_cost = cumulative_;
    step.lcc_size_after = lcc_size(residual_);
    const auto n = residual_.node_count();
    step.density_after = n >= 2 ? density(residual_) : 0.0;
    step.fragmentation_after = n >= 2 ? fragmentation(residual_) : 1.0;
    step.mean_betweenness_after = n >= 3 ? mean_betweenness(residual_) : 0.0;
    steps_.push_back(std::move(step));
  }

 private:
  const LabeledGraph& original_;
  LabeledGraph residual_;
  CostModel model_;
  std::size_t cumulative_ = 0;
  std::vector<RemovalStep> steps_;
};

DismantlingTrace start_trace(const LabeledGraph& g, const StrategySpec& spec) {
  spec.validate();
  if (g.empty()) throw PreconditionError("cannot dismantle an empty graph");
  DismantlingTrace trace;
  trace.strategy = spec;
  trace.initial_node_count = g.node_count();
  trace.initial_lcc_size = lcc_size(g);
  if (g.node_count() >= 3 && g.edge_count() > 0) trace.initial_metrics = report(g);
  return trace;
}

double target_nodes(const DismantlingTrace& trace) {
  return trace.strategy.target_lcc_fraction * static_cast<double>(trace.initial_node_count);
}

}  // namespace

std::string_view to_string(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::Random: return "random";
    case StrategyKind::Hub: return "hub";
    case StrategyKind::GND: return "gnd";
  }
  return "?";
}

StrategyKind parse_strategy(std::string_view text) {
  if (text == "random") return StrategyKind::Random;
  if (text == "hub") return StrategyKind::Hub;
  if (text == "gnd") return StrategyKind::GND;
  throw PreconditionError("unknown strategy '" + std::string(text) + "'");
}

std::string_view to_string(CostModel model) {
  return model == CostModel::Residual ? "residual" : "original";
}

CostModel parse_cost_model(std::string_view text) {
  if (text == "residual") return CostModel::Residual;
  if (text == "original") return CostModel::Original;
  throw PreconditionError("unknown cost model '" + std::string(text) + "'");
}

void StrategySpec::validate() const {
  if (!(target_lcc_fraction > 0.0 && target_lcc_fraction <= 1.0)) {
    throw PreconditionError("target LCC fraction must lie in (0, 1]");
  }
  if ((kind == StrategyKind::Random) != rng_seed.has_value()) {
    throw PreconditionError("an RNG seed is required for, and only for, the random strategy");
  }
}

std::vector<std::string> DismantlingTrace::removal_order() const {
  std::vector<std::string> out;
  out.reserve(steps.size());
  for (const auto& s : steps) out.push_back(s.node);
  return out;
}

std::vector<std::string> wvc(const LabeledGraph& g_star, const LabeledGraph& g) {
  const auto n = g.node_count();
  // work in g's index space
  std::vector<std::size_t> to_g(g_star.node_count());
  for (std::size_t i = 0; i < g_star.node_count(); ++i) {
    auto idx = g.find(g_star.label(i));
    if (!idx) throw PreconditionError("wvc: '" + g_star.label(i) + "' is not a node of G");
    to_g[i] = *idx;
  }
  std::vector<std::vector<std::size_t>> star_adj(n);
  for (auto [i, j] : g_star.edges()) {
    if (!g.has_edge(to_g[i], to_g[j])) {
      throw PreconditionError("wvc: crossing edge " + g_star.label(i) + " " + g_star.label(j) +
                              " is not an edge of G");
    }
    star_adj[to_g[i]].push_back(to_g[j]);
    star_adj[to_g[j]].push_back(to_g[i]);
  }

  std::vector<std::size_t> k(n), h(n);
  for (std::size_t i = 0; i < n; ++i) {
    k[i] = star_adj[i].size();
    h[i] = g.degree(i);
  }
  std::vector<bool> alive(n, true);
  std::size_t remaining_edges = g_star.edge_count();
  std::vector<std::string> picks;

  while (remaining_edges > 0) {
    std::size_t best = SIZE_MAX;
    for (std::size_t i = 0; i < n; ++i) {
      if (!alive[i] || k[i] == 0) continue;
      if (h[i] == 0) {
        throw PreconditionError("wvc: '" + g.label(i) + "' covers crossing edges but has degree 0 in G");
      }
      // k_i / h_i > k_best / h_best, strictly, so the smaller index wins ties
      if (best == SIZE_MAX || k[i] * h[best] > k[best] * h[i]) best = i;
    }
    picks.push_back(g.label(best));
    alive[best] = false;
    remaining_edges -= k[best];
    for (auto v : star_adj[best]) {
      if (alive[v]) --k[v];
    }
    for (auto v : g.neighbors(best)) {
      if (alive[v]) --h[v];
    }
    k[best] = 0;
  }
  return picks;
}

std::vector<std::string> gnd_round(const LabeledGraph& connected, const CostVector& costs,
                                   FiedlerSolver solver) {
  const auto bis = spectral_bisection(connected, costs, solver);
  return wvc(crossing_subgraph(connected, bis), connected);
}

DismantlingTrace gnd(const LabeledGraph& g, const StrategySpec& spec) {
  auto trace = start_trace(g, spec);
  const double target = target_nodes(trace);
  TraceBuilder builder(g, spec.cost_model);
  while (true) {
    const auto& residual = builder.residual();
    const auto lcc_nodes = largest_connected_component(residual);
    if (!above_target(lcc_nodes.size(), target)) break;

    std::vector<std::string> picks;
    if (lcc_nodes.size() == 1) {
      picks.push_back(*lcc_nodes.begin());
    } else {
      const auto lcc = induced_subgraph(residual, lcc_nodes);
      CostVector costs = CostVector::degrees(lcc);
      if (spec.cost_model == CostModel::Original) {
        std::map<std::string, double, std::less<>> w;
        for (const auto& label : lcc.labels()) w.emplace(label, static_cast<double>(g.degree(label)));
        costs = CostVector(std::move(w));
      }
      picks = gnd_round(lcc, costs);
      if (picks.empty()) {
        throw ConvergenceError("gnd: round removed no node while the LCC still has " +
                               std::to_string(lcc_nodes.size()) + " nodes");
      }
    }
    for (const auto& label : picks) builder.remove(label);
  }
  trace.steps = std::move(builder.steps());
  return trace;
}

DismantlingTrace hub_strategy(const LabeledGraph& g, const StrategySpec& spec) {
  auto trace = start_trace(g, spec);
  const double target = target_nodes(trace);
  TraceBuilder builder(g, spec.cost_model);
  while (above_target(lcc_size(builder.residual()), target)) {
    const auto& residual = builder.residual();
    std::size_t best = 0;
    for (std::size_t i = 1; i < residual.node_count(); ++i) {
      if (residual.degree(i) > residual.degree(best)) best = i;
    }
    builder.remove(residual.label(best));
  }
  trace.steps = std::move(builder.steps());
  return trace;
}

DismantlingTrace random_strategy(const LabeledGraph& g, const StrategySpec& spec) {
  auto trace = start_trace(g, spec);
  const double target = target_nodes(trace);
  Rng rng(*spec.rng_seed);
  std::vector<std::string> remaining = g.labels();
  TraceBuilder builder(g, spec.cost_model);
  while (above_target(lcc_size(builder.residual()), target)) {
    const auto pick = static_cast<std::ptrdiff_t>(rng.uniform_index(remaining.size()));
    const std::string label = remaining[static_cast<std::size_t>(pick)];
    remaining.erase(remaining.begin() + pick);
    builder.remove(label);
  }
  trace.steps = std::move(builder.steps());
  return trace;
}

DismantlingTrace dismantle(const LabeledGraph& g, const StrategySpec& spec) {
  switch (spec.kind) {
    case StrategyKind::Random: return random_strategy(g, spec);
    case StrategyKind::Hub: return hub_strategy(g, spec);
    case StrategyKind::GND: return gnd(g, spec);
  }
  throw PreconditionError("unknown strategy");
}

std::size_t threshold_cost(const DismantlingTrace& trace, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw PreconditionError("dismantled fraction must lie in [0, 1]");
  const double limit = (1.0 - p) * static_cast<double>(trace.initial_node_count);
  if (!above_target(trace.initial_lcc_size, limit)) return 0;
  for (const auto& step : trace.steps) {
    if (!above_target(step.lcc_size_after, limit)) return step.cumulative_cost;
  }
  throw PreconditionError("trace never reduces the LCC to " + std::to_string(limit) + " nodes");
}

std::vector<RemovalStep> replay(const LabeledGraph& g, const std::vector<std::string>& order,
                                CostModel model) {
  TraceBuilder builder(g, model);
  for (const auto& label : order) builder.remove(label);
  return std::move(builder.steps());
}

}  // namespace covnet
