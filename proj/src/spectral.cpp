#include "covnet/spectral.hpp"

#include <algorithm>
#include <vector>

namespace covnet {

CostVector::CostVector(std::map<std::string, double, std::less<>> costs) : costs_(std::move(costs)) {
  bool any_positive = false;
  for (const auto& [label, c] : costs_) {
    if (!(c >= 0.0)) throw PreconditionError("removal cost of '" + label + "' is negative");
    any_positive = any_positive || c > 0.0;
  }
  if (!any_positive) throw PreconditionError("at least one removal cost must be positive");
}

CostVector CostVector::degrees(const LabeledGraph& g) {
  std::map<std::string, double, std::less<>> costs;
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    costs.emplace_hint(costs.end(), g.label(i), static_cast<double>(g.degree(i)));
  }
  return CostVector(std::move(costs));
}

SpectralBisection bisect(const LabeledGraph& g, const Eigen::Ref<const Eigen::VectorXd>& v,
                         double fiedler_value) {
  if (static_cast<std::size_t>(v.size()) != g.node_count()) {
    throw PreconditionError("bisect: vector length does not match node count");
  }
  SpectralBisection out;
  out.fiedler_value = fiedler_value;
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    const double x = v[static_cast<Eigen::Index>(i)];
    (x >= 0.0 ? out.part_m : out.part_m_bar).insert(g.label(i));
    out.fiedler_vector.emplace(g.label(i), x);
  }
  if (out.part_m.empty() || out.part_m_bar.empty()) {
    throw PreconditionError("bisect: degenerate vector puts every node on one side");
  }
  return out;
}

SpectralBisection spectral_bisection(const LabeledGraph& g, const CostVector& w,
                                     FiedlerSolver solver, double tol, std::size_t max_iter) {
  const Eigen::MatrixXd l = weighted_laplacian(cost_matrix_b(g, w));
  const auto pair = solver == FiedlerSolver::Dense ? fiedler_dense(l) : fiedler(l, tol, max_iter);
  return bisect(g, pair.vector, pair.value);
}

LabeledGraph crossing_subgraph(const LabeledGraph& g, const SpectralBisection& bis) {
  std::vector<std::pair<std::string, std::string>> edges;
  std::vector<std::string> nodes;
  NodeSet seen;
  for (auto [i, j] : g.edges()) {
    const bool i_in_m = bis.part_m.contains(g.label(i));
    const bool j_in_m = bis.part_m.contains(g.label(j));
    if (i_in_m == j_in_m) continue;
    edges.emplace_back(g.label(i), g.label(j));
    for (auto k : {i, j}) {
      if (seen.insert(g.label(k)).second) nodes.push_back(g.label(k));
    }
  }
  return LabeledGraph::from_edges(std::move(nodes), edges);
}

}  // namespace covnet
