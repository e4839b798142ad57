#pragma once

#include <cmath>
#include <map>
#include <numbers>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "nashbound/errors.hpp"
#include "nashbound/mesh.hpp"

namespace nashbound {

/// Recursive midpoint subdivision of the icosahedron, re-projected to the sphere.
struct IcosphereSpec {
  int level = 3;
  double radius = 1.0;
};

/// Planar disk: center vertex plus `rings` concentric rings, ring j holding 6j vertices.
struct FlatDiskSpec {
  double radius = 1.0;
  int rings = 8;
};

/// Sphere portion with polar angle <= angle, ringed like the flat disk.
struct SphericalCapSpec {
  double radius = 1.0;
  double angle = std::numbers::pi / 3;
  int rings = 8;
};

/// Open cylinder around the z axis, `segments` vertices per row, staggered rows.
struct CylinderPatchSpec {
  double radius = 0.5;
  double height = 1.0;
  int segments = 24;
};

/// Pseudosphere (sech u cos v, sech u sin v, u - tanh u) for u in [u_min, u_max].
struct TractricoidPatchSpec {
  double u_min = 0.3;
  double u_max = 1.5;
  int segments = 32;
};

using GeneratorSpec =
    std::variant<IcosphereSpec, FlatDiskSpec, SphericalCapSpec, CylinderPatchSpec, TractricoidPatchSpec>;

namespace detail {

inline void require(bool ok, const char* what) {
  if (!ok) throw DomainError(what);
}

// Unit-parameter ring layout: (radial fraction j/rings, azimuth) per vertex and
// the zipped triangulation between consecutive rings.
struct RingLayout {
  std::vector<std::pair<double, double>> params;
  std::vector<Triangle> triangles;
};

inline RingLayout ring_layout(int rings) {
  RingLayout out;
  std::vector<Index> start{0};
  out.params.emplace_back(0.0, 0.0);
  for (int j = 1; j <= rings; ++j) {
    start.push_back(static_cast<Index>(out.params.size()));
    for (int k = 0; k < 6 * j; ++k) {
      out.params.emplace_back(static_cast<double>(j) / rings, 2.0 * std::numbers::pi * k / (6.0 * j));
    }
  }
  for (Index k = 0; k < 6; ++k) out.triangles.push_back({0, 1 + k, 1 + (k + 1) % 6});
  for (int j = 2; j <= rings; ++j) {
    // Walk both rings by azimuth, always advancing the one whose next vertex comes first.
    const Index ni = 6 * (j - 1), no = 6 * j, si = start[j - 1], so = start[j];
    Index a = 0, b = 0;
    while (a < ni || b < no) {
      const bool advance_outer = b < no && (a >= ni || (b + 1) * ni <= (a + 1) * no);
      if (advance_outer) {
        out.triangles.push_back({si + a % ni, so + b, so + (b + 1) % no});
        ++b;
      } else {
        out.triangles.push_back({si + a, so + b % no, si + (a + 1) % ni});
        ++a;
      }
    }
  }
  return out;
}

// Lawson flips until every interior edge has a non-negative cotangent weight.
// Each pass flips a set of edges with pairwise disjoint faces, in edge order.
inline void delaunay_flip(const Eigen::MatrixXd& pos, std::vector<Triangle>& tris) {
  auto cot_at = [&](Index o, Index a, Index b) {
    const Eigen::VectorXd u = (pos.row(a) - pos.row(o)).transpose();
    const Eigen::VectorXd v = (pos.row(b) - pos.row(o)).transpose();
    const double d = u.dot(v);
    return d / std::sqrt(std::max(u.squaredNorm() * v.squaredNorm() - d * d, 1e-300));
  };
  auto opposite = [](const Triangle& t, Index a, Index b) {
    for (Index v : t) {
      if (v != a && v != b) return v;
    }
    return Index{-1};
  };
  for (int pass = 0; pass < 10000; ++pass) {
    const auto inc = edge_incidences(tris);
    std::vector<std::pair<Index, Index>> existing;
    for_each_edge(inc, [&](Index lo, Index hi, std::size_t, std::size_t) { existing.emplace_back(lo, hi); });
    auto has_edge = [&](Index x, Index y) {
      return std::binary_search(existing.begin(), existing.end(), std::make_pair(std::min(x, y), std::max(x, y)));
    };
    std::vector<bool> touched(tris.size(), false);
    bool flipped = false;
    for_each_edge(inc, [&](Index lo, Index hi, std::size_t first, std::size_t last) {
      if (last - first != 2) return;
      const auto f1 = static_cast<std::size_t>(inc[first].face), f2 = static_cast<std::size_t>(inc[first + 1].face);
      if (touched[f1] || touched[f2]) return;
      const Index o1 = opposite(tris[f1], lo, hi), o2 = opposite(tris[f2], lo, hi);
      if (cot_at(o1, lo, hi) + cot_at(o2, lo, hi) >= -1e-12 || has_edge(o1, o2)) return;
      // Rotate f1 to (o1, a, b); f2 then reads (o2, b, a).
      Triangle t1 = tris[f1];
      while (t1[0] != o1) t1 = {t1[1], t1[2], t1[0]};
      const Index a = t1[1], b = t1[2];
      tris[f1] = {o1, a, o2};
      tris[f2] = {o2, b, o1};
      touched[f1] = touched[f2] = true;
      flipped = true;
    });
    if (!flipped) return;
  }
}

inline ImmersedMesh icosphere(const IcosphereSpec& s) {
  require(s.level >= 0 && s.level <= 8, "icosphere level must be in [0, 8]");
  require(s.radius > 0.0, "icosphere radius must be positive");
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Eigen::Vector3d> v = {{-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0}, {0, -1, t}, {0, 1, t},
                                    {0, -1, -t}, {0, 1, -t}, {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}};
  for (auto& p : v) p.normalize();
  std::vector<Triangle> f = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                             {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                             {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                             {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  for (int l = 0; l < s.level; ++l) {
    std::map<std::pair<Index, Index>, Index> midpoint;
    auto mid = [&](Index a, Index b) {
      const auto key = std::make_pair(std::min(a, b), std::max(a, b));
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      v.push_back((v[a] + v[b]).normalized());
      const auto idx = static_cast<Index>(v.size()) - 1;
      midpoint.emplace(key, idx);
      return idx;
    };
    std::vector<Triangle> next;
    next.reserve(f.size() * 4);
    for (const auto& tri : f) {
      const Index ab = mid(tri[0], tri[1]), bc = mid(tri[1], tri[2]), ca = mid(tri[2], tri[0]);
      next.push_back({tri[0], ab, ca});
      next.push_back({tri[1], bc, ab});
      next.push_back({tri[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    f = std::move(next);
  }
  Eigen::MatrixXd pos(static_cast<Index>(v.size()), 3);
  for (std::size_t i = 0; i < v.size(); ++i) pos.row(static_cast<Index>(i)) = s.radius * v[i].transpose();
  return ImmersedMesh(std::move(pos), std::move(f));
}

inline ImmersedMesh flat_disk(const FlatDiskSpec& s) {
  require(s.rings >= 1, "flat disk needs at least 1 ring");
  require(s.radius > 0.0, "flat disk radius must be positive");
  auto layout = ring_layout(s.rings);
  Eigen::MatrixXd pos(static_cast<Index>(layout.params.size()), 3);
  for (std::size_t i = 0; i < layout.params.size(); ++i) {
    const auto [frac, phi] = layout.params[i];
    pos.row(static_cast<Index>(i)) << s.radius * frac * std::cos(phi), s.radius * frac * std::sin(phi), 0.0;
  }
  delaunay_flip(pos, layout.triangles);
  return ImmersedMesh(std::move(pos), std::move(layout.triangles));
}

inline ImmersedMesh spherical_cap(const SphericalCapSpec& s) {
  require(s.rings >= 1, "spherical cap needs at least 1 ring");
  require(s.radius > 0.0, "spherical cap radius must be positive");
  require(s.angle > 0.0 && s.angle < std::numbers::pi, "spherical cap angle must be in (0, pi)");
  auto layout = ring_layout(s.rings);
  Eigen::MatrixXd pos(static_cast<Index>(layout.params.size()), 3);
  for (std::size_t i = 0; i < layout.params.size(); ++i) {
    const auto [frac, phi] = layout.params[i];
    const double theta = s.angle * frac;
    pos.row(static_cast<Index>(i)) << s.radius * std::sin(theta) * std::cos(phi),
        s.radius * std::sin(theta) * std::sin(phi), s.radius * std::cos(theta);
  }
  delaunay_flip(pos, layout.triangles);
  return ImmersedMesh(std::move(pos), std::move(layout.triangles));
}

// Staggered band triangulation: `rows` rows of `segments` vertices each,
// periodic around; odd rows are offset by half a segment.
inline std::vector<Triangle> staggered_band(Index rows, Index segments) {
  std::vector<Triangle> tris;
  auto at = [segments](Index row, Index k) { return row * segments + (k % segments); };
  for (Index i = 0; i + 1 < rows; ++i) {
    for (Index k = 0; k < segments; ++k) {
      if (i % 2 == 0) {
        tris.push_back({at(i, k), at(i, k + 1), at(i + 1, k)});
        tris.push_back({at(i + 1, k), at(i, k + 1), at(i + 1, k + 1)});
      } else {
        tris.push_back({at(i, k), at(i + 1, k + 1), at(i + 1, k)});
        tris.push_back({at(i, k), at(i, k + 1), at(i + 1, k + 1)});
      }
    }
  }
  return tris;
}

inline double stagger_offset(Index row) { return row % 2 == 0 ? 0.0 : 0.5; }

inline ImmersedMesh cylinder_patch(const CylinderPatchSpec& s) {
  require(s.segments >= 6, "cylinder patch needs at least 6 segments");
  require(s.radius > 0.0 && s.height > 0.0, "cylinder patch radius and height must be positive");
  const double row_spacing = 2.0 * std::numbers::pi * s.radius / s.segments * std::sqrt(3.0) / 2.0;
  const Index rows = std::max<Index>(3, std::lround(s.height / row_spacing) + 1);
  Eigen::MatrixXd pos(rows * s.segments, 3);
  for (Index i = 0; i < rows; ++i) {
    const double z = s.height * static_cast<double>(i) / static_cast<double>(rows - 1);
    for (Index k = 0; k < s.segments; ++k) {
      const double phi = 2.0 * std::numbers::pi * (k + stagger_offset(i)) / s.segments;
      pos.row(i * s.segments + k) << s.radius * std::cos(phi), s.radius * std::sin(phi), z;
    }
  }
  return ImmersedMesh(std::move(pos), staggered_band(rows, s.segments));
}

inline ImmersedMesh tractricoid_patch(const TractricoidPatchSpec& s) {
  require(s.segments >= 6, "tractricoid patch needs at least 6 segments");
  require(s.u_min >= 0.1, "tractricoid patch must stay clear of the cusp (u_min >= 0.1)");
  require(s.u_max > s.u_min, "tractricoid patch needs u_max > u_min");
  // Rows are uniform in meridian arc length s = ln cosh u.
  const double s0 = std::log(std::cosh(s.u_min)), s1 = std::log(std::cosh(s.u_max));
  const double mid_radius = 1.0 / std::cosh(0.5 * (s.u_min + s.u_max));
  const double row_spacing = 2.0 * std::numbers::pi * mid_radius / s.segments * std::sqrt(3.0) / 2.0;
  const Index rows = std::max<Index>(3, std::lround((s1 - s0) / row_spacing) + 1);
  Eigen::MatrixXd pos(rows * s.segments, 3);
  for (Index i = 0; i < rows; ++i) {
    const double arc = s0 + (s1 - s0) * static_cast<double>(i) / static_cast<double>(rows - 1);
    const double u = std::acosh(std::exp(arc));
    const double r = 1.0 / std::cosh(u);
    for (Index k = 0; k < s.segments; ++k) {
      const double phi = 2.0 * std::numbers::pi * (k + stagger_offset(i)) / s.segments;
      pos.row(i * s.segments + k) << r * std::cos(phi), r * std::sin(phi), u - std::tanh(u);
    }
  }
  return ImmersedMesh(std::move(pos), staggered_band(rows, s.segments));
}

}  // namespace detail

/// Builds the analytic test mesh described by `spec`. Throws DomainError on
/// out-of-range parameters.
inline ImmersedMesh generate(const GeneratorSpec& spec) {
  return std::visit(
      [](const auto& s) -> ImmersedMesh {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, IcosphereSpec>) return detail::icosphere(s);
        else if constexpr (std::is_same_v<S, FlatDiskSpec>) return detail::flat_disk(s);
        else if constexpr (std::is_same_v<S, SphericalCapSpec>) return detail::spherical_cap(s);
        else if constexpr (std::is_same_v<S, CylinderPatchSpec>) return detail::cylinder_patch(s);
        else return detail::tractricoid_patch(s);
      },
      spec);
}

}  // namespace nashbound
