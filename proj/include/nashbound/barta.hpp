#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Core>

#include "nashbound/errors.hpp"
#include "nashbound/mesh.hpp"
#include "nashbound/operators.hpp"

namespace nashbound {

/// A ball B(center, radius) that strictly contains every vertex of a mesh,
/// with the per-vertex distance rho to its center.
class BallFrame {
 public:
  static BallFrame around(const ImmersedMesh& mesh, Eigen::VectorXd center, double radius) {
    if (center.size() != mesh.ambient_dim()) throw DomainError("ball center dimension mismatch");
    if (!(radius > 0.0) || !std::isfinite(radius)) throw DomainError("ball radius must be positive");
    BallFrame f;
    f.rho_ = (mesh.positions().rowwise() - center.transpose()).rowwise().norm();
    if (f.rho_.size() > 0 && !(f.rho_.maxCoeff() < radius)) {
      throw DomainError("immersion not strictly inside ball");
    }
    f.center_ = std::move(center);
    f.radius_ = radius;
    return f;
  }

  const Eigen::VectorXd& center() const { return center_; }
  double radius() const { return radius_; }
  const Eigen::VectorXd& rho() const { return rho_; }

 private:
  BallFrame() = default;
  Eigen::VectorXd center_;
  double radius_ = 0.0;
  Eigen::VectorXd rho_;
};

/// f = (R^2 - rho^2) / 2, positive on the open ball.
inline Eigen::VectorXd nash_test_function(const ImmersedMesh& mesh, const BallFrame& frame) {
  if (frame.rho().size() != mesh.vertex_count()) throw DomainError("ball frame does not match mesh");
  const double r2 = frame.radius() * frame.radius();
  Eigen::VectorXd f = (r2 - frame.rho().array().square()).matrix() / 2.0;
  for (Index v = 0; v < f.size(); ++v) {
    if (!(f[v] > 0.0)) throw DomainError("immersion not strictly inside ball");
  }
  return f;
}

struct BartaReport {
  double bound = 0.0;          // min over interior vertices of -lap(f)/f
  Index argmin_vertex = -1;
  std::vector<Index> vertices;  // interior vertices, in order
  Eigen::VectorXd quotients;    // -lap(f)/f at `vertices`
  /// 2n/R^2 - 2 sup|H|/R; NaN unless computed against a ball frame.
  double analytic_floor = std::numeric_limits<double>::quiet_NaN();
  Index delaunay_violations = 0;
};

/// Lower bound for the fundamental tone from a positive test field.
inline BartaReport barta_bound(const ImmersedMesh& mesh, const OperatorPair& ops, const BoundaryPartition& part,
                               const Eigen::VectorXd& f) {
  if (ops.size() != mesh.vertex_count()) throw DomainError("operator size does not match mesh");
  if (part.interior_indices.empty()) throw DomainError("mesh has no interior vertices");
  for (Index v : part.interior_indices) {
    if (!(f[v] > 0.0)) throw DomainError("Barta requires positive f");
  }
  const auto lap = laplacian(ops, f);
  BartaReport rep;
  rep.vertices = part.interior_indices;
  rep.quotients.resize(static_cast<Index>(rep.vertices.size()));
  rep.bound = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < rep.vertices.size(); ++k) {
    const Index v = rep.vertices[k];
    const double q = -lap.values[v] / f[v];
    rep.quotients[static_cast<Index>(k)] = q;
    if (q < rep.bound) {
      rep.bound = q;
      rep.argmin_vertex = v;
    }
  }
  rep.delaunay_violations = ops.delaunay_violations;
  return rep;
}

/// barta_bound of the test function of `frame`, with the analytic floor
/// 2n/R^2 - 2 sup|H|/R filled in.
inline BartaReport nash_barta_report(const ImmersedMesh& mesh, const OperatorPair& ops,
                                     const BoundaryPartition& part, const BallFrame& frame) {
  auto rep = barta_bound(mesh, ops, part, nash_test_function(mesh, frame));
  const double n = ImmersedMesh::intrinsic_dim;
  const double r = frame.radius();
  rep.analytic_floor = 2.0 * n / (r * r) - 2.0 * mean_curvature(mesh, ops).sup_norm / r;
  return rep;
}

struct JkResidual {
  std::vector<Index> vertices;
  Eigen::VectorXd values;
  double max = 0.0;
};

/**
 * Discrete check of lap(g o phi) = tr Hess g + <grad g, H> for the test
 * function g = (R^2 - rho^2)/2, where grad g = -(x - c) and Hess g = -Id,
 * so the right side is -n - <x - c, H>. Evaluated at interior vertices.
 */
inline JkResidual jk_residual(const ImmersedMesh& mesh, const OperatorPair& ops, const BallFrame& frame) {
  const auto f = nash_test_function(mesh, frame);
  const auto lap = laplacian(ops, f);
  const auto h = mean_curvature(mesh, ops);
  const double n = ImmersedMesh::intrinsic_dim;

  JkResidual out;
  out.vertices = h.vertices;
  out.values.resize(static_cast<Index>(h.vertices.size()));
  for (std::size_t k = 0; k < h.vertices.size(); ++k) {
    const Index v = h.vertices[k];
    const auto ki = static_cast<Index>(k);
    const Eigen::VectorXd offset = mesh.position(v) - frame.center();
    const double predicted = -n - offset.dot(h.vectors.row(ki).transpose());
    out.values[ki] = std::abs(lap.values[v] - predicted);
  }
  out.max = out.values.maxCoeff();
  return out;
}

}  // namespace nashbound
