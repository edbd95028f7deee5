#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "covnet/graph.hpp"

namespace covnet {

struct RosterEntry {
  std::string label;
  std::optional<Role> role;
};

struct DegreeConstraint {
  std::string node;
  std::size_t degree = 0;
};

/// deg(a) + deg(b) - [a ~ b] == value, i.e. the number of edges touching a or b.
struct PairUnionConstraint {
  std::string a;
  std::string b;
  std::size_t value = 0;
};

struct HardConstraints {
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
  bool connected = false;
  std::vector<DegreeConstraint> degrees;
  std::vector<std::pair<std::string, std::string>> adjacencies;
  std::vector<PairUnionConstraint> pair_unions;
  /// Adaptive hub removal must take exactly these nodes first, in any order.
  std::vector<std::string> top_degree;
};

/// Soft target metric names accepted by `objective`.
///   density, fragmentation, average_degree, diameter, average_clustering,
///   degree_centralization, mean_betweenness: scalar metrics.
///   eigenvector_top: number of `nodes` missing from the |nodes| highest
///   eigenvector scores (ties to smaller label); its target value is 0.
///   gnd_prefix: positions where the first-round GND picks on the LCC differ
///   from `nodes` (dense Fiedler solve); its target value is 0.
struct SoftTarget {
  std::string metric;
  double value = 0.0;
  double weight = 1.0;
  std::vector<std::string> nodes;
};

struct AnnealingSchedule {
  double initial_temperature = 1.0;
  double cooling_factor = 0.999;
  std::size_t iterations = 200000;
  std::uint64_t rng_seed = 1;
  /// Independent chains with seeds rng_seed, rng_seed + 1, ...; the lowest
  /// objective wins, earlier chains on ties.
  std::size_t restarts = 1;
  double acceptance_bound = std::numeric_limits<double>::infinity();
};

struct SynthesisTarget {
  std::vector<RosterEntry> roster;  // empty: labels v01, v02, ...
  HardConstraints hard;
  std::vector<SoftTarget> soft;
  AnnealingSchedule schedule;
  /// Charged (times weight) for a soft metric that cannot be computed.
  double uncomputable_penalty = 1.0;

  std::vector<std::string> labels() const;

  /// Throws PreconditionError on malformed targets (unknown metric, bad
  /// weight, roster size mismatch, unknown label).
  void validate() const;
};

/// Default reference target: 34 actors, 225 edges and every published
/// statistic that constrains them.
SynthesisTarget chiapas_target();

/// Σ weight * (metric - target)^2 over the soft targets.
double objective(const LabeledGraph& g, const SynthesisTarget& target);

/// Individual soft metric value; throws when not computable on g.
double soft_metric(const LabeledGraph& g, const SoftTarget& soft);

/// Empty when every hard constraint holds; otherwise one message per failure.
std::vector<std::string> hard_violations(const LabeledGraph& g, const HardConstraints& hard);

/// Cheap necessary conditions (counts, bounds, parity). Throws InfeasibleError.
void check_feasibility(const SynthesisTarget& target);

struct SynthesisResult {
  LabeledGraph graph;
  double objective = 0.0;
  bool within_bound = true;
  std::size_t accepted_moves = 0;
  std::size_t rejected_hard = 0;
  std::size_t restart = 0;
};

/**
 * Simulated annealing over graphs with exactly node_count nodes and
 * edge_count edges.
 *
 * A move deletes a uniformly chosen edge and adds a uniformly chosen
 * non-edge. Moves breaking a hard constraint are rejected outright; the rest
 * are accepted with probability min(1, exp(-delta / T)), T shrinking by
 * cooling_factor every iteration. Returns the best graph visited.
 *
 * Without `initial`, a feasible start is found first by descent on a
 * hard-constraint violation score from a uniformly random graph; failing
 * that throws InfeasibleError. A supplied `initial` must already satisfy the
 * hard constraints. Runs are reproducible from schedule.rng_seed.
 */
SynthesisResult synthesize_reference(const SynthesisTarget& target,
                                     const std::optional<LabeledGraph>& initial = std::nullopt);

}  // namespace covnet
