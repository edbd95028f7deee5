#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "covnet/graph.hpp"
#include "covnet/metrics.hpp"
#include "covnet/spectral.hpp"

namespace covnet {

enum class StrategyKind { Random, Hub, GND };

/// How a removal is charged: degree in the residual graph at removal time,
/// or degree in the graph the run started from.
enum class CostModel { Residual, Original };

std::string_view to_string(StrategyKind kind);
StrategyKind parse_strategy(std::string_view text);
std::string_view to_string(CostModel model);
CostModel parse_cost_model(std::string_view text);

struct StrategySpec {
  StrategyKind kind = StrategyKind::GND;
  double target_lcc_fraction = 0.2;
  std::optional<std::uint64_t> rng_seed;  // Random only
  CostModel cost_model = CostModel::Residual;

  /// Throws PreconditionError unless target is in (0, 1] and a seed is
  /// present exactly when kind is Random.
  void validate() const;

  bool operator==(const StrategySpec&) const = default;
};

struct RemovalStep {
  std::string node;
  std::size_t cost = 0;
  std::size_t cumulative_cost = 0;
  std::size_t lcc_size_after = 0;
  double density_after = 0.0;
  double fragmentation_after = 1.0;
  double mean_betweenness_after = 0.0;

  bool operator==(const RemovalStep&) const = default;
};

struct DismantlingTrace {
  StrategySpec strategy;
  std::size_t initial_node_count = 0;
  std::size_t initial_lcc_size = 0;
  std::optional<MetricsReport> initial_metrics;  // absent when n < 3 or edgeless
  std::vector<RemovalStep> steps;

  std::size_t total_cost() const { return steps.empty() ? 0 : steps.back().cumulative_cost; }
  std::vector<std::string> removal_order() const;
};

/**
 * Weighted vertex cover of the crossing edges.
 *
 * While G* has edges, pick the node maximizing k/h (k = degree in G*, h =
 * degree in G), ties to the smallest label, and delete it from both graphs.
 * Returns the picks in order. Throws PreconditionError when a node with k > 0
 * has h = 0, which means G* is not a subgraph of G.
 */
std::vector<std::string> wvc(const LabeledGraph& g_star, const LabeledGraph& g);

/// One GND round on a connected graph with at least two nodes: Fiedler
/// split under `costs`, crossing subgraph, then the WVC picks in order.
std::vector<std::string> gnd_round(const LabeledGraph& connected, const CostVector& costs,
                                   FiedlerSolver solver = FiedlerSolver::PowerIteration);

/// Runs the strategy named by `spec.kind`.
DismantlingTrace dismantle(const LabeledGraph& g, const StrategySpec& spec);

/**
 * Generalized network dismantling. Each round works on the current largest
 * component: degree costs, B = AW + WA - A, its Laplacian, Fiedler split,
 * crossing subgraph, then WVC picks are removed in order. Runs until the LCC
 * holds at most target * n0 nodes. A round whose LCC is a single node removes
 * that node.
 */
DismantlingTrace gnd(const LabeledGraph& g, const StrategySpec& spec);

/// Adaptive hub removal: always the current highest-degree node.
DismantlingTrace hub_strategy(const LabeledGraph& g, const StrategySpec& spec);

/// Uniform removal order drawn from Rng(spec.rng_seed).
DismantlingTrace random_strategy(const LabeledGraph& g, const StrategySpec& spec);

/// Cumulative cost at the first step whose LCC is <= (1 - p) n0; 0 when the
/// initial LCC already satisfies it. Throws PreconditionError when the trace
/// never gets there.
std::size_t threshold_cost(const DismantlingTrace& trace, double p);

/// Removes `order` one node at a time from `g` and logs the same per-step
/// record a strategy run produces. Used both internally and to re-validate a
/// trace from its removal order alone.
std::vector<RemovalStep> replay(const LabeledGraph& g, const std::vector<std::string>& order,
                                CostModel model = CostModel::Residual);

}  // namespace covnet
