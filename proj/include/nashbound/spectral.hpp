#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Eigenvalues>
#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCore>

#include "nashbound/errors.hpp"
#include "nashbound/mesh.hpp"
#include "nashbound/operators.hpp"

namespace nashbound {

struct SolverOptions {
  int max_iterations = 500;
  /// Outer stop: relative change of the Rayleigh quotient between iterations.
  double outer_tolerance = 1e-12;
  /// Relative residual of each conjugate-gradient solve.
  double inner_tolerance = 1e-12;
  /// Outer stop: ||K u - tone M u|| / ||M u|| <= residual_tolerance.
  double residual_tolerance = 1e-10;
};

enum class SolverMethod { iterative, dense, closed_trivial };

inline const char* to_string(SolverMethod m) {
  switch (m) {
    case SolverMethod::iterative: return "iterative";
    case SolverMethod::dense: return "dense";
    case SolverMethod::closed_trivial: return "closed_trivial";
  }
  return "unknown";
}

struct SpectralResult {
  double tone = 0.0;
  Eigen::VectorXd eigenfunction;  // all vertices, zero on the boundary, unit mass-norm
  int iterations = 0;
  double residual = 0.0;
  SolverMethod method = SolverMethod::iterative;
};

namespace detail {

// Maps each vertex to its position among the interior vertices (-1 on the boundary).
inline std::vector<Index> interior_slots(Index n, const BoundaryPartition& part) {
  std::vector<Index> slot(static_cast<std::size_t>(n), -1);
  for (std::size_t k = 0; k < part.interior_indices.size(); ++k) {
    slot[static_cast<std::size_t>(part.interior_indices[k])] = static_cast<Index>(k);
  }
  return slot;
}

inline SparseMatrix restrict_to_interior(const SparseMatrix& m, const std::vector<Index>& slot,
                                         Index interior_count) {
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<std::size_t>(m.nonZeros()));
  for (Index col = 0; col < m.outerSize(); ++col) {
    const Index c = slot[static_cast<std::size_t>(col)];
    if (c < 0) continue;
    for (SparseMatrix::InnerIterator it(m, col); it; ++it) {
      const Index r = slot[static_cast<std::size_t>(it.row())];
      if (r >= 0) trips.emplace_back(r, c, it.value());
    }
  }
  SparseMatrix out(interior_count, interior_count);
  out.setFromTriplets(trips.begin(), trips.end());
  out.makeCompressed();
  return out;
}

inline double relative_residual(const SparseMatrix& k, const Eigen::VectorXd& m, const Eigen::VectorXd& u,
                                double tone) {
  const Eigen::VectorXd mu = m.cwiseProduct(u);
  return (k * u - tone * mu).norm() / mu.norm();
}

// Flips the sign so that the entry of largest magnitude is positive.
inline void normalize_sign(Eigen::VectorXd& u) {
  Index at = 0;
  u.cwiseAbs().maxCoeff(&at);
  if (u[at] < 0.0) u = -u;
}

inline void check_operator(const OperatorPair& ops, const BoundaryPartition& part) {
  if (static_cast<Index>(part.interior_indices.size() + part.boundary_indices.size()) != ops.size()) {
    throw DomainError("boundary partition does not match operator size");
  }
  if (part.interior_indices.empty()) throw DomainError("mesh has no interior vertices");
}

inline SpectralResult closed_ground_state(const OperatorPair& ops) {
  SpectralResult r;
  r.method = SolverMethod::closed_trivial;
  r.tone = 0.0;
  r.eigenfunction = Eigen::VectorXd::Constant(ops.size(), 1.0 / std::sqrt(ops.mass.sum()));
  r.residual = detail::relative_residual(ops.stiffness, ops.mass, r.eigenfunction, 0.0);
  return r;
}

}  // namespace detail

/**
 * Fundamental tone: smallest eigenvalue of K u = tone M u restricted to
 * interior vertices (Dirichlet condition by row/column deletion).
 *
 * Closed meshes return tone 0 with the constant eigenfunction. Otherwise
 * inverse iteration at shift 0 runs from the mass-normalized constant
 * vector, each step solving the restricted stiffness system by conjugate
 * gradients, until the Rayleigh quotient stagnates and the residual meets
 * `opts.residual_tolerance`.
 */
inline SpectralResult fundamental_tone(const OperatorPair& ops, const BoundaryPartition& part,
                                       const SolverOptions& opts = {}) {
  detail::check_operator(ops, part);
  if (part.closed()) return detail::closed_ground_state(ops);
  if (opts.max_iterations < 1) throw DomainError("max_iterations must be positive");

  const auto ni = static_cast<Index>(part.interior_indices.size());
  const auto slot = detail::interior_slots(ops.size(), part);
  const SparseMatrix k = detail::restrict_to_interior(ops.stiffness, slot, ni);
  Eigen::VectorXd m(ni);
  for (Index i = 0; i < ni; ++i) m[i] = ops.mass[part.interior_indices[static_cast<std::size_t>(i)]];

  Eigen::ConjugateGradient<SparseMatrix, Eigen::Lower | Eigen::Upper> cg;
  cg.setTolerance(opts.inner_tolerance);
  cg.setMaxIterations(std::max<Index>(1000, 20 * ni));
  cg.compute(k);
  if (cg.info() != Eigen::Success) throw DomainError("restricted stiffness is not positive definite");

  Eigen::VectorXd u = Eigen::VectorXd::Ones(ni);
  u /= std::sqrt(u.dot(m.cwiseProduct(u)));
  double tone = u.dot(k * u);
  double residual = detail::relative_residual(k, m, u, tone);

  for (int it = 1; it <= opts.max_iterations; ++it) {
    const Eigen::VectorXd rhs = m.cwiseProduct(u);
    Eigen::VectorXd y = cg.solveWithGuess(rhs, u / std::max(tone, 1e-300));
    if (cg.info() != Eigen::Success) {
      throw ConvergenceError("inner conjugate-gradient solve did not converge", residual);
    }
    u = y / std::sqrt(y.dot(m.cwiseProduct(y)));
    const double next = u.dot(k * u);
    residual = detail::relative_residual(k, m, u, next);
    const bool stagnant = std::abs(next - tone) <= opts.outer_tolerance * std::abs(next);
    tone = next;
    if (stagnant && residual <= opts.residual_tolerance) {
      detail::normalize_sign(u);
      SpectralResult r;
      r.tone = std::max(tone, 0.0);
      r.eigenfunction = Eigen::VectorXd::Zero(ops.size());
      for (Index i = 0; i < ni; ++i) r.eigenfunction[part.interior_indices[static_cast<std::size_t>(i)]] = u[i];
      r.iterations = it;
      r.residual = residual;
      r.method = SolverMethod::iterative;
      return r;
    }
  }
  throw ConvergenceError("inverse iteration did not converge in " + std::to_string(opts.max_iterations) +
                             " iterations",
                         residual);
}

/// Convenience overload: assembles the operators and partition itself.
inline SpectralResult fundamental_tone(const ImmersedMesh& mesh, const SolverOptions& opts = {}) {
  return fundamental_tone(assemble(mesh), boundary_partition(mesh), opts);
}

inline constexpr Index dense_oracle_limit = 2000;

namespace detail {

inline Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> dense_solve(const OperatorPair& ops,
                                                                            const BoundaryPartition& part,
                                                                            int options) {
  detail::check_operator(ops, part);
  const auto ni = static_cast<Index>(part.interior_indices.size());
  if (ni > dense_oracle_limit) {
    throw DomainError("dense eigensolve limited to " + std::to_string(dense_oracle_limit) + " interior vertices");
  }
  const auto slot = interior_slots(ops.size(), part);
  const Eigen::MatrixXd k = Eigen::MatrixXd(restrict_to_interior(ops.stiffness, slot, ni));
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(ni, ni);
  for (Index i = 0; i < ni; ++i) m(i, i) = ops.mass[part.interior_indices[static_cast<std::size_t>(i)]];
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(k, m, options | Eigen::Ax_lBx);
  if (es.info() != Eigen::Success) throw ConvergenceError("dense generalized eigensolve failed", 0.0);
  return es;
}

}  // namespace detail

/// Every eigenvalue of the interior-restricted pencil, ascending. Brute
/// force; limited to dense_oracle_limit interior vertices.
inline std::vector<double> dense_oracle(const OperatorPair& ops, const BoundaryPartition& part) {
  const auto es = detail::dense_solve(ops, part, Eigen::EigenvaluesOnly);
  std::vector<double> values(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(values.begin(), values.end());
  return values;
}

/// Ground state from the dense decomposition (method = dense).
inline SpectralResult dense_ground_state(const OperatorPair& ops, const BoundaryPartition& part) {
  const auto es = detail::dense_solve(ops, part, Eigen::ComputeEigenvectors);
  const auto ni = static_cast<Index>(part.interior_indices.size());
  Eigen::VectorXd m(ni);
  for (Index i = 0; i < ni; ++i) m[i] = ops.mass[part.interior_indices[static_cast<std::size_t>(i)]];
  Eigen::VectorXd u = es.eigenvectors().col(0);
  u /= std::sqrt(u.dot(m.cwiseProduct(u)));
  detail::normalize_sign(u);

  SpectralResult r;
  r.method = SolverMethod::dense;
  r.tone = std::max(es.eigenvalues()[0], 0.0);
  r.eigenfunction = Eigen::VectorXd::Zero(ops.size());
  for (Index i = 0; i < ni; ++i) r.eigenfunction[part.interior_indices[static_cast<std::size_t>(i)]] = u[i];
  const auto slot = detail::interior_slots(ops.size(), part);
  r.residual = detail::relative_residual(detail::restrict_to_interior(ops.stiffness, slot, ni), m, u, r.tone);
  return r;
}

}  // namespace nashbound
