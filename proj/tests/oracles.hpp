#pragma once

// Independent reference implementations shared by the unit and acceptance
// tests. Nothing here calls into the library's algorithms.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

#include "covnet/graph.hpp"
#include "covnet/rng.hpp"

namespace oracle {

using Edges = std::vector<std::pair<int, int>>;

inline std::string node_name(int i) {
  std::string s = "n";
  if (i < 10) s += '0';
  return s + std::to_string(i);
}

inline covnet::LabeledGraph make_graph(int n, const Edges& edges) {
  std::vector<std::string> nodes;
  for (int i = 0; i < n; ++i) nodes.push_back(node_name(i));
  std::vector<std::pair<std::string, std::string>> named;
  for (auto [a, b] : edges) named.emplace_back(node_name(a), node_name(b));
  return covnet::LabeledGraph::from_edges(nodes, named);
}

inline Edges gnp_edges(int n, double p, covnet::Rng& rng) {
  Edges e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.uniform_real() < p) e.emplace_back(i, j);
  return e;
}

inline Edges gnm_edges(int n, int m, covnet::Rng& rng) {
  std::vector<std::pair<int, int>> all;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) all.emplace_back(i, j);
  rng.partial_shuffle(all, static_cast<std::size_t>(m));
  all.resize(static_cast<std::size_t>(m));
  return all;
}

inline std::vector<std::vector<int>> adjacency(int n, const Edges& edges) {
  std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
  for (auto [u, v] : edges) a[u][v] = a[v][u] = 1;
  return a;
}

inline bool connected(int n, const Edges& edges) {
  if (n == 0) return true;
  auto a = adjacency(n, edges);
  std::vector<int> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int v = 0; v < n; ++v)
      if (a[u][v] && !seen[v]) {
        seen[v] = 1;
        ++count;
        stack.push_back(v);
      }
  }
  return count == n;
}

// ---- isomorphism classes of small graphs ----

inline int pair_index(int i, int j, int n) {
  if (i > j) std::swap(i, j);
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

inline Edges decode(std::uint32_t code, int n) {
  Edges e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (code >> pair_index(i, j, n) & 1u) e.emplace_back(i, j);
  return e;
}

/// One representative per isomorphism class of graphs on n <= 7 nodes.
/// Built by extending every class on n-1 nodes with a new vertex in all
/// possible ways and reducing by a canonical code (minimum over all
/// relabelings).
inline std::vector<Edges> graph_classes(int n) {
  std::vector<std::uint32_t> prev{0};  // n = 1
  for (int k = 2; k <= n; ++k) {
    const int pairs = k * (k - 1) / 2;
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> remap;
    do {
      std::vector<int> r(pairs);
      for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) r[pair_index(i, j, k)] = pair_index(perm[i], perm[j], k);
      remap.push_back(std::move(r));
    } while (std::next_permutation(perm.begin(), perm.end()));

    std::set<std::uint32_t> classes;
    for (auto code : prev) {
      std::uint32_t base = 0;
      for (auto [i, j] : decode(code, k - 1)) base |= 1u << pair_index(i, j, k);
      for (std::uint32_t mask = 0; mask < (1u << (k - 1)); ++mask) {
        std::uint32_t g = base;
        for (int i = 0; i < k - 1; ++i)
          if (mask >> i & 1u) g |= 1u << pair_index(i, k - 1, k);
        std::uint32_t best = UINT32_MAX;
        for (const auto& r : remap) {
          std::uint32_t c = 0;
          for (int p = 0; p < pairs; ++p)
            if (g >> p & 1u) c |= 1u << r[p];
          best = std::min(best, c);
        }
        classes.insert(best);
      }
    }
    prev.assign(classes.begin(), classes.end());
  }
  std::vector<Edges> out;
  for (auto code : prev) out.push_back(decode(code, n));
  return out;
}

inline std::vector<Edges> connected_graph_classes(int n) {
  std::vector<Edges> out;
  for (auto& e : graph_classes(n))
    if (connected(n, e)) out.push_back(std::move(e));
  return out;
}

// ---- betweenness by enumerating every shortest path ----

/// Normalized betweenness: for each unordered pair {s, t} not containing v,
/// the fraction of shortest s-t paths through v, summed, times
/// 2 / ((n-1)(n-2)).
inline std::vector<double> brute_betweenness(int n, const Edges& edges) {
  auto a = adjacency(n, edges);
  const int inf = 1 << 20;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
  for (int i = 0; i < n; ++i) {
    d[i][i] = 0;
    for (int j = 0; j < n; ++j)
      if (a[i][j]) d[i][j] = 1;
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);

  std::vector<double> bc(n, 0.0);
  for (int s = 0; s < n; ++s) {
    for (int t = s + 1; t < n; ++t) {
      if (d[s][t] >= inf) continue;
      std::vector<std::vector<int>> paths;
      std::vector<int> path{s};
      // depth-first walk restricted to paths of exactly d[s][t] hops
      auto walk = [&](auto&& self, int u) -> void {
        if (u == t) {
          if (static_cast<int>(path.size()) - 1 == d[s][t]) paths.push_back(path);
          return;
        }
        if (static_cast<int>(path.size()) - 1 >= d[s][t]) return;
        for (int v = 0; v < n; ++v) {
          if (!a[u][v] || std::find(path.begin(), path.end(), v) != path.end()) continue;
          path.push_back(v);
          self(self, v);
          path.pop_back();
        }
      };
      walk(walk, s);
      for (int v = 0; v < n; ++v) {
        if (v == s || v == t) continue;
        int through = 0;
        for (const auto& p : paths)
          if (std::find(p.begin() + 1, p.end() - 1, v) != p.end() - 1) ++through;
        bc[v] += static_cast<double>(through) / static_cast<double>(paths.size());
      }
    }
  }
  if (n >= 3)
    for (auto& x : bc) x *= 2.0 / ((n - 1.0) * (n - 2.0));
  return bc;
}

// ---- greedy min-ratio vertex cover, recomputed from scratch each step ----

/// Each step: among nodes still touching a crossing edge, pick max
/// k / h where k counts remaining crossing edges at the node and h its
/// remaining degree in G. Ties go to the smaller index.
inline std::vector<int> brute_wvc(int n, const Edges& g, const Edges& crossing) {
  std::vector<int> removed(n, 0);
  std::vector<int> picks;
  while (true) {
    std::vector<long> k(n, 0), h(n, 0);
    long live = 0;
    for (auto [u, v] : crossing)
      if (!removed[u] && !removed[v]) {
        ++k[u];
        ++k[v];
        ++live;
      }
    if (live == 0) break;
    for (auto [u, v] : g)
      if (!removed[u] && !removed[v]) {
        ++h[u];
        ++h[v];
      }
    int best = -1;
    for (int i = 0; i < n; ++i) {
      if (removed[i] || k[i] == 0) continue;
      if (best < 0 || k[i] * h[best] > k[best] * h[i]) best = i;
    }
    picks.push_back(best);
    removed[best] = 1;
  }
  return picks;
}

// ---- dense Laplacian eigenpairs ----

struct DenseSpectrum {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

/// Eigen-decomposition of D - A (unit costs), built directly from the edge
/// list.
inline DenseSpectrum laplacian_spectrum(int n, const Edges& edges) {
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  for (auto [u, v] : edges) {
    l(u, v) -= 1.0;
    l(v, u) -= 1.0;
    l(u, u) += 1.0;
    l(v, v) += 1.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(l);
  return {es.eigenvalues(), es.eigenvectors()};
}

/// Length of v's projection onto the eigenspace of `lambda` (unit v gives 1
/// when v lies inside it). Collapses to |cos| for a simple eigenvalue.
inline double eigenspace_alignment(const DenseSpectrum& s, double lambda, const Eigen::VectorXd& v,
                                   double cluster = 1e-8) {
  double sq = 0.0;
  for (Eigen::Index i = 0; i < s.values.size(); ++i)
    if (std::abs(s.values[i] - lambda) <= cluster) {
      const double c = s.vectors.col(i).dot(v);
      sq += c * c;
    }
  return std::sqrt(sq) / v.norm();
}

}  // namespace oracle
