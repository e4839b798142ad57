#pragma once

#include <cstdint>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>

#include <Eigen/Core>

#include "nashbound/barta.hpp"
#include "nashbound/enclosing_ball.hpp"
#include "nashbound/errors.hpp"
#include "nashbound/mesh.hpp"
#include "nashbound/operators.hpp"
#include "nashbound/spectral.hpp"

namespace nashbound {

/// n/R - tone R/2: the lower bound for sup |H| of an immersion into B(R).
inline double bound_rhs(int n, double radius, double tone) {
  return n / radius - tone * radius / 2.0;
}

/// 1/R - tone R/(2n): the same bound for the normalized mean curvature H = |H|/n.
inline double bound_scalar_rhs(int n, double radius, double tone) {
  return 1.0 / radius - tone * radius / (2.0 * n);
}

struct MeshStats {
  Index vertex_count = 0;
  Index face_count = 0;
  Index interior_count = 0;
  Index boundary_count = 0;
  double min_edge_length = 0.0;
  double max_edge_length = 0.0;
};

struct VerificationReport {
  int n = ImmersedMesh::intrinsic_dim;
  double R = 0.0;
  Eigen::VectorXd center;
  double sup_H_norm = 0.0;
  double tone = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool holds = false;
  double tolerance = 0.0;
  double scalar_rhs = 0.0;
  Index delaunay_violations = 0;
  MeshStats mesh_stats;
  SpectralResult spectral;

  /// True when the mesh has boundary: the report then concerns a compact
  /// approximation of the manifold rather than a closed surface.
  bool compact_approximation() const { return mesh_stats.boundary_count > 0; }
};

struct VerifyOptions {
  std::optional<Eigen::VectorXd> center;
  std::optional<double> radius;
  std::optional<double> tolerance;  // default 0.05 n / R
  SolverOptions solver;
};

/**
 * Chooses the ball B(center, R) the mesh is measured against.
 *
 * The ball defaults to the minimal enclosing ball (inflated for strict
 * containment). A user center without a radius gets the tightest radius
 * about that center; a user radius without a center is placed at the
 * minimal ball's center. Throws DomainError if the ball does not strictly
 * contain the mesh.
 */
inline BallFrame select_ball(const ImmersedMesh& mesh, const std::optional<Eigen::VectorXd>& center,
                             const std::optional<double>& radius) {
  if (center) {
    if (center->size() != mesh.ambient_dim()) throw DomainError("ball center dimension mismatch");
    const double r = radius ? *radius
                            : (mesh.positions().rowwise() - center->transpose()).rowwise().norm().maxCoeff() *
                                  (1.0 + enclosing_ball_inflation);
    return BallFrame::around(mesh, *center, r);
  }
  const auto ball = enclosing_ball(mesh.positions());
  return BallFrame::around(mesh, ball.center, radius ? *radius : ball.radius);
}

/// Evaluates sup|H| >= n/R - tone R/2 on a mesh, with the ball chosen by select_ball().
inline VerificationReport verify(const ImmersedMesh& mesh, const VerifyOptions& opts = {}) {
  require_valid(mesh);
  const auto frame = select_ball(mesh, opts.center, opts.radius);

  const auto centered = translate(mesh, -frame.center());
  const auto ops = assemble(centered);
  const auto part = boundary_partition(centered);
  const auto h = mean_curvature(centered, ops);
  auto spectral = fundamental_tone(ops, part, opts.solver);

  VerificationReport rep;
  rep.R = frame.radius();
  rep.center = frame.center();
  rep.sup_H_norm = h.sup_norm;
  rep.tone = spectral.tone;
  rep.rhs = bound_rhs(rep.n, rep.R, rep.tone);
  rep.scalar_rhs = bound_scalar_rhs(rep.n, rep.R, rep.tone);
  rep.margin = rep.sup_H_norm - rep.rhs;
  rep.tolerance = opts.tolerance ? *opts.tolerance : 0.05 * rep.n / rep.R;
  if (!(rep.tolerance >= 0.0)) throw DomainError("tolerance must be non-negative");
  rep.holds = rep.margin >= -rep.tolerance;
  rep.delaunay_violations = ops.delaunay_violations;

  const auto edges = edge_length_range(mesh);
  rep.mesh_stats = {mesh.vertex_count(),
                    mesh.face_count(),
                    static_cast<Index>(part.interior_indices.size()),
                    static_cast<Index>(part.boundary_indices.size()),
                    edges.min,
                    edges.max};
  rep.spectral = std::move(spectral);
  return rep;
}

/// Human-readable rendering of the inequality with the report's numbers.
inline std::string render_inequality(const VerificationReport& rep) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "sup|H| = %.12g >= n/R - tone*R/2 = %d/%.12g - %.12g*%.12g/2 = %.12g (%s; %s)",
                rep.sup_H_norm, rep.n, rep.R, rep.tone, rep.R, rep.rhs, rep.holds ? "holds" : "violated",
                rep.compact_approximation() ? "compact approximation" : "closed surface");
  return buf;
}

/// True when tone < 2n/R^2: no minimal immersion of an n-manifold with this
/// fundamental tone fits in a ball of radius R.
inline bool minimal_obstruction(int n, double tone, double radius) {
  if (n < 1) throw DomainError("dimension must be at least 1");
  if (!(radius > 0.0)) throw DomainError("radius must be positive");
  if (!(tone >= 0.0)) throw DomainError("tone must be non-negative");
  return tone < 2.0 * n / (radius * radius);
}

struct HyperbolicRemark {
  double tone = 0.0;   // (n-1)^2/4, bottom of the spectrum of H^n(-1)
  long long threshold = 0;  // 2n = 2n/R^2 at R = 1
  bool obstructed = false;
};

inline HyperbolicRemark hyperbolic_remark(int n) {
  if (n < 2) throw DomainError("hyperbolic remark needs n >= 2");
  HyperbolicRemark r;
  r.tone = (n - 1.0) * (n - 1.0) / 4.0;
  r.threshold = 2LL * n;
  r.obstructed = minimal_obstruction(n, r.tone, 1.0);
  return r;
}

/// n(n+1)(3n+11)/2 in exact integer arithmetic; throws on 64-bit overflow.
inline std::uint64_t nash_dimension(long long n) {
  if (n < 1) throw DomainError("dimension must be at least 1");
  // Beyond this the result exceeds 64 bits anyway; keeps the product inside 128.
  if (n > 10'000'000) throw DomainError("Nash dimension overflows 64 bits");
  const auto m = static_cast<unsigned __int128>(n);
  const unsigned __int128 value = m * (m + 1) / 2 * (3 * m + 11);
  if (value > std::numeric_limits<std::uint64_t>::max()) throw DomainError("Nash dimension overflows 64 bits");
  return static_cast<std::uint64_t>(value);
}

}  // namespace nashbound
