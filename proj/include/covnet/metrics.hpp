#pragma once

#include <cstddef>
#include <map>
#include <string>

#include <Eigen/Core>

#include "covnet/graph.hpp"

namespace covnet {

/// Per-node values indexed like the graph's sorted labels.
using NodeScores = Eigen::VectorXd;

std::map<std::string, double> to_label_map(const LabeledGraph& g, const NodeScores& scores);

/// 2m / (n(n-1)). Requires n >= 2.
double density(const LabeledGraph& g);

/// F = 1 - 2 * sum_{i} sum_{j<i} A_ij / (n(n-1)). Requires n >= 2.
double fragmentation(const LabeledGraph& g);

/// 2m / n. Requires n >= 1.
double average_degree(const LabeledGraph& g);

/// Largest BFS eccentricity inside the largest connected component.
/// Requires at least one edge.
std::size_t diameter_lcc(const LabeledGraph& g);

/// Fraction of neighbor pairs of `label` that are adjacent; 0 when deg < 2.
double local_clustering(const LabeledGraph& g, std::string_view label);
double local_clustering(const LabeledGraph& g, std::size_t node);

/// Mean of local_clustering over every node (degree < 2 nodes count as 0).
double average_clustering(const LabeledGraph& g);

/**
 * Brandes betweenness over unordered pairs, scaled by 2/((n-1)(n-2)) so a
 * node that lies on every shortest path between all other pairs scores 1.
 * Requires n >= 3.
 */
NodeScores betweenness(const LabeledGraph& g);

double mean_betweenness(const LabeledGraph& g);

inline constexpr double kEigenTolerance = 1e-9;
inline constexpr std::size_t kEigenMaxIter = 10000;

/**
 * Eigenvector centrality on the largest connected component; nodes outside
 * it score 0. Iterates x <- (x + A x) / max from the all-ones vector. The
 * shift by the identity averages consecutive power steps so bipartite
 * components do not oscillate. Stops once successive iterates differ by less
 * than `tol` in max-norm and the eigen-residual |Ax - lambda x|_inf is also
 * below `tol`. Scores are max-normalized.
 *
 * Throws ConvergenceError after `max_iter` steps, PreconditionError on an
 * empty graph.
 */
NodeScores eigenvector_centrality(const LabeledGraph& g, double tol = kEigenTolerance,
                                  std::size_t max_iter = kEigenMaxIter);

/// Freeman index sum_i (d_max - d_i) / ((n-1)(n-2)). Requires n >= 3.
double degree_centralization(const LabeledGraph& g);

struct MetricsReport {
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
  double density = 0.0;
  double fragmentation = 0.0;
  std::size_t diameter_lcc = 0;
  double average_degree = 0.0;
  double average_clustering = 0.0;
  double mean_betweenness = 0.0;
  double degree_centralization = 0.0;
  std::map<std::string, double> eigenvector_centrality;

  bool operator==(const MetricsReport&) const = default;
};

/// Every statistic above. Requires n >= 3 and at least one edge.
MetricsReport report(const LabeledGraph& g);

}  // namespace covnet
