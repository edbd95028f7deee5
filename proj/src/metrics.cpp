#include "covnet/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>
#include <vector>

#include "covnet/errors.hpp"

namespace covnet {

namespace {

void require_nodes(const LabeledGraph& g, std::size_t min_nodes, const char* what) {
  if (g.node_count() < min_nodes) {
    throw PreconditionError(std::string(what) + " requires at least " + std::to_string(min_nodes) +
                            " nodes, graph has " + std::to_string(g.node_count()));
  }
}

// BFS hop distances from `source`; SIZE_MAX marks unreachable nodes.
std::vector<std::size_t> bfs_distances(const LabeledGraph& g, std::size_t source) {
  std::vector<std::size_t> dist(g.node_count(), SIZE_MAX);
  std::queue<std::size_t> frontier;
  dist[source] = 0;
  frontier.push(source);
  while (!frontier.empty()) {
    const auto u = frontier.front();
    frontier.pop();
    for (auto v : g.neighbors(u)) {
      if (dist[v] == SIZE_MAX) {
        dist[v] = dist[u] + 1;
        frontier.push(v);
      }
    }
  }
  return dist;
}

}  // namespace

std::map<std::string, double> to_label_map(const LabeledGraph& g, const NodeScores& scores) {
  std::map<std::string, double> out;
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    out.emplace_hint(out.end(), g.label(i), scores[static_cast<Eigen::Index>(i)]);
  }
  return out;
}

double density(const LabeledGraph& g) {
  require_nodes(g, 2, "density");
  const double n = static_cast<double>(g.node_count());
  return 2.0 * static_cast<double>(g.edge_count()) / (n * (n - 1.0));
}

double fragmentation(const LabeledGraph& g) {
  require_nodes(g, 2, "fragmentation");
  // lower-triangle sum of the adjacency matrix
  std::size_t lower = 0;
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    for (auto j : g.neighbors(i)) lower += (j < i) ? 1 : 0;
  }
  const double n = static_cast<double>(g.node_count());
  return 1.0 - 2.0 * static_cast<double>(lower) / (n * (n - 1.0));
}

double average_degree(const LabeledGraph& g) {
  require_nodes(g, 1, "average_degree");
  return 2.0 * static_cast<double>(g.edge_count()) / static_cast<double>(g.node_count());
}

std::size_t diameter_lcc(const LabeledGraph& g) {
  if (g.edge_count() == 0) throw PreconditionError("diameter_lcc requires at least one edge");
  std::size_t diameter = 0;
  for (auto s : largest_component_indices(g)) {
    for (auto d : bfs_distances(g, s)) {
      if (d != SIZE_MAX) diameter = std::max(diameter, d);
    }
  }
  return diameter;
}

double local_clustering(const LabeledGraph& g, std::size_t node) {
  const auto nb = g.neighbors(node);
  const auto k = nb.size();
  if (k < 2) return 0.0;
  std::size_t links = 0;
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b) links += g.has_edge(nb[a], nb[b]) ? 1 : 0;
  }
  return 2.0 * static_cast<double>(links) / static_cast<double>(k * (k - 1));
}

double local_clustering(const LabeledGraph& g, std::string_view label) {
  return local_clustering(g, g.index_of(label));
}

double average_clustering(const LabeledGraph& g) {
  require_nodes(g, 1, "average_clustering");
  double sum = 0.0;
  for (std::size_t i = 0; i < g.node_count(); ++i) sum += local_clustering(g, i);
  return sum / static_cast<double>(g.node_count());
}

NodeScores betweenness(const LabeledGraph& g) {
  require_nodes(g, 3, "betweenness");
  const auto n = g.node_count();
  NodeScores score = NodeScores::Zero(static_cast<Eigen::Index>(n));

  std::vector<std::size_t> order;
  std::vector<std::vector<std::size_t>> preds(n);
  std::vector<double> sigma(n), delta(n);
  std::vector<std::size_t> dist(n);
  std::queue<std::size_t> frontier;

  for (std::size_t s = 0; s < n; ++s) {
    order.clear();
    for (auto& p : preds) p.clear();
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    std::fill(dist.begin(), dist.end(), SIZE_MAX);
    sigma[s] = 1.0;
    dist[s] = 0;
    frontier.push(s);
    while (!frontier.empty()) {
      const auto u = frontier.front();
      frontier.pop();
      order.push_back(u);
      for (auto v : g.neighbors(u)) {
        if (dist[v] == SIZE_MAX) {
          dist[v] = dist[u] + 1;
          frontier.push(v);
        }
        if (dist[v] == dist[u] + 1) {
          sigma[v] += sigma[u];
          preds[v].push_back(u);
        }
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const auto w = *it;
      for (auto v : preds[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      if (w != s) score[static_cast<Eigen::Index>(w)] += delta[w];
    }
  }
  // each unordered pair was accumulated from both ends
  const double nn = static_cast<double>(n);
  score *= 1.0 / ((nn - 1.0) * (nn - 2.0));
  return score;
}

double mean_betweenness(const LabeledGraph& g) { return betweenness(g).mean(); }

NodeScores eigenvector_centrality(const LabeledGraph& g, double tol, std::size_t max_iter) {
  require_nodes(g, 1, "eigenvector_centrality");
  const auto members = largest_component_indices(g);
  const auto m = members.size();
  std::vector<std::size_t> local(g.node_count(), SIZE_MAX);
  for (std::size_t k = 0; k < m; ++k) local[members[k]] = k;

  auto multiply = [&](const Eigen::VectorXd& x) {
    Eigen::VectorXd y = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
    for (std::size_t k = 0; k < m; ++k) {
      double acc = 0.0;
      for (auto v : g.neighbors(members[k])) acc += x[static_cast<Eigen::Index>(local[v])];
      y[static_cast<Eigen::Index>(k)] = acc;
    }
    return y;
  };

  Eigen::VectorXd x = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(m));
  bool converged = m == 1;
  for (std::size_t iter = 0; iter < max_iter && !converged; ++iter) {
    const Eigen::VectorXd ax = multiply(x);
    Eigen::VectorXd next = x + ax;
    next /= next.maxCoeff();
    const double step = (next - x).lpNorm<Eigen::Infinity>();
    x = std::move(next);
    if (step < tol) {
      const Eigen::VectorXd ax_new = multiply(x);
      const double lambda = x.dot(ax_new) / x.squaredNorm();
      converged = (ax_new - lambda * x).lpNorm<Eigen::Infinity>() < tol;
    }
  }
  if (!converged) {
    throw ConvergenceError("eigenvector centrality did not converge in " +
                           std::to_string(max_iter) + " iterations");
  }

  NodeScores out = NodeScores::Zero(static_cast<Eigen::Index>(g.node_count()));
  for (std::size_t k = 0; k < m; ++k) {
    out[static_cast<Eigen::Index>(members[k])] = x[static_cast<Eigen::Index>(k)];
  }
  return out;
}

double degree_centralization(const LabeledGraph& g) {
  require_nodes(g, 3, "degree_centralization");
  const auto n = g.node_count();
  const auto dmax = g.max_degree();
  std::size_t gap = 0;
  for (std::size_t i = 0; i < n; ++i) gap += dmax - g.degree(i);
  return static_cast<double>(gap) / static_cast<double>((n - 1) * (n - 2));
}

MetricsReport report(const LabeledGraph& g) {
  require_nodes(g, 3, "report");
  MetricsReport r;
  r.node_count = g.node_count();
  r.edge_count = g.edge_count();
  r.density = density(g);
  r.fragmentation = fragmentation(g);
  r.diameter_lcc = diameter_lcc(g);
  r.average_degree = average_degree(g);
  r.average_clustering = average_clustering(g);
  r.mean_betweenness = mean_betweenness(g);
  r.degree_centralization = degree_centralization(g);
  r.eigenvector_centrality = to_label_map(g, eigenvector_centrality(g));
  return r;
}

}  // namespace covnet
