#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <string>

#include <Eigen/Core>
#include <Eigen/Eigenvalues>

#include "covnet/errors.hpp"
#include "covnet/graph.hpp"
#include "covnet/rng.hpp"

namespace covnet {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Removal cost per node label. Costs are nonnegative and at least one is
/// positive.
class CostVector {
 public:
  CostVector() = default;
  explicit CostVector(std::map<std::string, double, std::less<>> costs);

  /// Degree of every node in `g`.
  static CostVector degrees(const LabeledGraph& g);

  const std::map<std::string, double, std::less<>>& values() const { return costs_; }

  /// Dense vector aligned with `g`'s node order. A node without a cost throws
  /// PreconditionError.
  template <typename Scalar = double>
  VectorX<Scalar> dense(const LabeledGraph& g) const {
    VectorX<Scalar> w(static_cast<Eigen::Index>(g.node_count()));
    for (std::size_t i = 0; i < g.node_count(); ++i) {
      auto it = costs_.find(g.label(i));
      if (it == costs_.end()) throw PreconditionError("no removal cost for '" + g.label(i) + "'");
      w[static_cast<Eigen::Index>(i)] = static_cast<Scalar>(it->second);
    }
    return w;
  }

 private:
  std::map<std::string, double, std::less<>> costs_;
};

template <typename Scalar = double>
MatrixX<Scalar> adjacency_matrix(const LabeledGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  MatrixX<Scalar> a = MatrixX<Scalar>::Zero(n, n);
  for (auto [i, j] : g.edges()) {
    a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = Scalar(1);
    a(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = Scalar(1);
  }
  return a;
}

/// B = AW + WA - A with W = diag(w). Entrywise B_ij = A_ij (w_i + w_j - 1).
template <typename DerivedA, typename DerivedW>
auto cost_matrix_b(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedW>& w) {
  return (a * w.asDiagonal() + w.asDiagonal() * a - a).eval();
}

template <typename Scalar = double>
MatrixX<Scalar> cost_matrix_b(const LabeledGraph& g, const CostVector& costs) {
  return cost_matrix_b(adjacency_matrix<Scalar>(g), costs.dense<Scalar>(g));
}

/// L = D_B - B. Rejects a non-square, asymmetric or nonzero-diagonal input.
template <typename Derived>
auto weighted_laplacian(const Eigen::MatrixBase<Derived>& b) {
  using Scalar = typename Derived::Scalar;
  if (b.rows() != b.cols()) throw PreconditionError("weighted_laplacian: matrix is not square");
  const Scalar scale = std::max(Scalar(1), b.cwiseAbs().maxCoeff());
  const Scalar eps = Scalar(1e-12) * scale;
  if ((b - b.transpose()).cwiseAbs().maxCoeff() > eps) {
    throw PreconditionError("weighted_laplacian: matrix is not symmetric");
  }
  if (b.rows() > 0 && b.diagonal().cwiseAbs().maxCoeff() > eps) {
    throw PreconditionError("weighted_laplacian: diagonal is not zero");
  }
  MatrixX<Scalar> l = -b;
  l.diagonal() += b.rowwise().sum();
  return l;
}

template <typename Scalar>
struct FiedlerPair {
  Scalar value;
  VectorX<Scalar> vector;
};

inline constexpr double kFiedlerTolerance = 1e-9;
inline constexpr std::size_t kFiedlerMaxIter = 50000;
inline constexpr double kDisconnectedThreshold = 1e-10;

/**
 * Second-smallest eigenpair of a weighted Laplacian.
 *
 * Power iteration on (sigma I - L) with sigma = max_i 2 L_ii, which bounds the
 * spectrum from above, so the dominant direction after removing the constant
 * vector is the Fiedler direction. The normalized all-ones vector is projected
 * out every step. The start vector is drawn from a fixed-seed generator.
 *
 * Converged when |L v - lambda v|_2 <= tol. The returned vector has unit norm
 * and its first component with magnitude above 1e-12 (in label order) is
 * positive.
 *
 * Throws ConvergenceError after `max_iter` steps and PreconditionError when
 * lambda_2 < 1e-10 (disconnected input) or n < 2.
 */
template <typename Derived>
FiedlerPair<typename Derived::Scalar> fiedler(const Eigen::MatrixBase<Derived>& l,
                                              double tol = kFiedlerTolerance,
                                              std::size_t max_iter = kFiedlerMaxIter) {
  using Scalar = typename Derived::Scalar;
  using Vec = VectorX<Scalar>;
  const Eigen::Index n = l.rows();
  if (n < 2 || l.cols() != n) throw PreconditionError("fiedler: need a square matrix with n >= 2");

  const Scalar sigma = Scalar(2) * l.diagonal().maxCoeff();
  const Scalar inv_sqrt_n = Scalar(1) / std::sqrt(static_cast<Scalar>(n));
  auto deflate = [&](Vec& v) {
    v.array() -= v.sum() * inv_sqrt_n * inv_sqrt_n;
    v.normalize();
  };

  Rng rng(0x5eed);
  Vec v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = static_cast<Scalar>(rng.uniform_real() - 0.5);
  deflate(v);

  Vec lv = l * v;
  Scalar lambda = v.dot(lv);
  bool converged = (lv - lambda * v).norm() <= tol;
  for (std::size_t iter = 0; iter < max_iter && !converged; ++iter) {
    v = sigma * v - lv;
    deflate(v);
    lv = l * v;
    lambda = v.dot(lv);
    converged = (lv - lambda * v).norm() <= tol;
  }
  if (!converged) {
    throw ConvergenceError("fiedler: no convergence in " + std::to_string(max_iter) +
                           " iterations (residual " + std::to_string((lv - lambda * v).norm()) +
                           ")");
  }
  if (lambda < Scalar(kDisconnectedThreshold)) {
    throw PreconditionError("fiedler: algebraic connectivity is zero, graph is disconnected");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(v[i]) > Scalar(1e-12)) {
      if (v[i] < 0) v = -v;
      break;
    }
  }
  return {lambda, v};
}

/**
 * Same contract as `fiedler`, computed with a dense symmetric eigensolver.
 * Much faster for repeated small solves; the result can differ from the power
 * iteration only inside a degenerate eigenspace.
 */
template <typename Derived>
FiedlerPair<typename Derived::Scalar> fiedler_dense(const Eigen::MatrixBase<Derived>& l) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = l.rows();
  if (n < 2 || l.cols() != n) throw PreconditionError("fiedler: need a square matrix with n >= 2");
  Eigen::SelfAdjointEigenSolver<MatrixX<Scalar>> solver(l.eval());
  if (solver.info() != Eigen::Success) throw ConvergenceError("fiedler_dense: eigensolver failed");
  const Scalar lambda = solver.eigenvalues()[1];
  if (lambda < Scalar(kDisconnectedThreshold)) {
    throw PreconditionError("fiedler: algebraic connectivity is zero, graph is disconnected");
  }
  VectorX<Scalar> v = solver.eigenvectors().col(1).normalized();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(v[i]) > Scalar(1e-12)) {
      if (v[i] < 0) v = -v;
      break;
    }
  }
  return {lambda, v};
}

enum class FiedlerSolver { PowerIteration, Dense };

struct SpectralBisection {
  NodeSet part_m;
  NodeSet part_m_bar;
  double fiedler_value = 0.0;
  std::map<std::string, double> fiedler_vector;
};

/// Sign split: v_i >= 0 goes to M, v_i < 0 to M-bar. Throws
/// PreconditionError when one side is empty or v has the wrong length.
SpectralBisection bisect(const LabeledGraph& g, const Eigen::Ref<const Eigen::VectorXd>& v,
                         double fiedler_value = 0.0);

/// Fiedler bisection of `g` under removal costs `w`: B, L, v2, split.
SpectralBisection spectral_bisection(const LabeledGraph& g, const CostVector& w,
                                     FiedlerSolver solver = FiedlerSolver::PowerIteration,
                                     double tol = kFiedlerTolerance,
                                     std::size_t max_iter = kFiedlerMaxIter);

/// Edges of `g` with one endpoint in each part; nodes are their endpoints.
LabeledGraph crossing_subgraph(const LabeledGraph& g, const SpectralBisection& bis);

}  // namespace covnet
