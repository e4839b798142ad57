#pragma once

// Shared test fixtures and independent oracles. Nothing here calls the code
// paths it is used to check.

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "nashbound.hpp"

namespace nashbound::testing {

inline ImmersedMesh unit_triangle() {
  Eigen::MatrixXd p(3, 3);
  p << 0, 0, 0, 1, 0, 0, 0, 1, 0;
  return ImmersedMesh(p, {{0, 1, 2}});
}

inline ImmersedMesh equilateral_triangle() {
  Eigen::MatrixXd p(3, 3);
  p << 0, 0, 0, 1, 0, 0, 0.5, std::sqrt(3.0) / 2.0, 0;
  return ImmersedMesh(p, {{0, 1, 2}});
}

inline ImmersedMesh disk(int rings, double radius = 1.0) { return generate(FlatDiskSpec{radius, rings}); }
inline ImmersedMesh sphere(int level, double radius = 1.0) { return generate(IcosphereSpec{level, radius}); }

/// Clifford torus (cos a, sin a, cos b, sin b)/sqrt(2) in R^4: flat, closed,
/// on the unit sphere of R^4, with H = -2 x exactly in the smooth setting.
inline ImmersedMesh clifford_torus(int segments) {
  Eigen::MatrixXd p(segments * segments, 4);
  std::vector<Triangle> tris;
  auto at = [segments](int i, int j) { return static_cast<Index>(((i % segments) * segments) + (j % segments)); };
  for (int i = 0; i < segments; ++i) {
    for (int j = 0; j < segments; ++j) {
      const double a = 2 * std::numbers::pi * i / segments, b = 2 * std::numbers::pi * j / segments;
      p.row(at(i, j)) << std::cos(a), std::sin(a), std::cos(b), std::sin(b);
      tris.push_back({at(i, j), at(i + 1, j), at(i + 1, j + 1)});
      tris.push_back({at(i, j), at(i + 1, j + 1), at(i, j + 1)});
    }
  }
  return ImmersedMesh(p / std::sqrt(2.0), std::move(tris));
}

/// Smallest positive zero of J0 by bisection on the standard library's Bessel function.
inline double bessel_j0_first_zero() {
  double lo = 2.0, hi = 3.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (std::cyl_bessel_j(0.0, mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

/// Ball through `support` with center in their affine hull (brute-force oracle).
struct OracleBall {
  Eigen::VectorXd center;
  double radius = -1.0;
  bool ok = false;
};

inline OracleBall circumball(const Eigen::MatrixXd& pts, const std::vector<int>& support) {
  OracleBall b;
  const Eigen::VectorXd p0 = pts.row(support[0]).transpose();
  const int k = static_cast<int>(support.size()) - 1;
  if (k == 0) return {p0, 0.0, true};
  Eigen::MatrixXd a(pts.cols(), k);
  for (int i = 0; i < k; ++i) a.col(i) = pts.row(support[i + 1]).transpose() - p0;
  const Eigen::MatrixXd gram = a.transpose() * a;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(gram);
  if (lu.rank() < k) return b;
  const Eigen::VectorXd lambda = lu.solve(0.5 * a.colwise().squaredNorm().transpose());
  b.center = p0 + a * lambda;
  b.radius = (p0 - b.center).norm();
  b.ok = true;
  return b;
}

/// Minimal enclosing ball by exhaustive search over all subsets of size <= dim+1.
inline OracleBall brute_force_ball(const Eigen::MatrixXd& pts) {
  const int n = static_cast<int>(pts.rows());
  const int max_k = static_cast<int>(pts.cols()) + 1;
  OracleBall best;
  best.radius = std::numeric_limits<double>::infinity();
  std::vector<int> idx;
  auto encloses = [&](const OracleBall& b) {
    for (int i = 0; i < n; ++i) {
      if ((pts.row(i).transpose() - b.center).norm() > b.radius * (1 + 1e-10) + 1e-12) return false;
    }
    return true;
  };
  auto recurse = [&](auto&& self, int start) -> void {
    if (!idx.empty()) {
      const auto b = circumball(pts, idx);
      if (!b.ok || b.radius >= best.radius) return;  // supersets have radius >= this one
      if (encloses(b)) {
        best = b;
        return;
      }
    }
    if (static_cast<int>(idx.size()) == max_k) return;
    for (int i = start; i < n; ++i) {
      idx.push_back(i);
      self(self, i + 1);
      idx.pop_back();
    }
  };
  recurse(recurse, 0);
  return best;
}

/// Strictly positive random field, log-uniform in [lo, hi].
inline Eigen::VectorXd random_positive_field(Index n, std::mt19937_64& rng, double lo = 0.1, double hi = 10.0) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  Eigen::VectorXd f(n);
  for (Index i = 0; i < n; ++i) f[i] = std::exp(u(rng));
  return f;
}

inline Eigen::VectorXd random_field(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::VectorXd f(n);
  for (Index i = 0; i < n; ++i) f[i] = g(rng);
  return f;
}

}  // namespace nashbound::testing
