#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <sstream>
#include <limits>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "nashbound/errors.hpp"

namespace nashbound {

using Index = Eigen::Index;
using Triangle = std::array<Index, 3>;

/**
 * Triangle surface immersed in R^N.
 *
 * Positions are stored one vertex per row, so `positions()` is
 * vertex_count x ambient_dim. Faces are counterclockwise vertex-index
 * triples. The intrinsic dimension of every mesh is 2.
 *
 * The type is an immutable value: nothing mutates a mesh after
 * construction, and operations that transform it return a new one.
 * Construction does not validate; call validate() or require_valid().
 */
class ImmersedMesh {
 public:
  static constexpr int intrinsic_dim = 2;

  ImmersedMesh() = default;
  ImmersedMesh(Eigen::MatrixXd positions, std::vector<Triangle> triangles)
      : positions_(std::move(positions)), triangles_(std::move(triangles)) {}

  Index vertex_count() const { return positions_.rows(); }
  Index ambient_dim() const { return positions_.cols(); }
  Index face_count() const { return static_cast<Index>(triangles_.size()); }

  const Eigen::MatrixXd& positions() const { return positions_; }
  const std::vector<Triangle>& triangles() const { return triangles_; }

  Eigen::VectorXd position(Index v) const { return positions_.row(v).transpose(); }

 private:
  Eigen::MatrixXd positions_;
  std::vector<Triangle> triangles_;
};

enum class ViolationKind {
  ambient_dimension,
  index_out_of_range,
  degenerate_triangle,
  non_manifold_edge,
  non_finite_coordinate,
  disconnected_interior,
};

struct Violation {
  ViolationKind kind;
  Index index;  // offending triangle or vertex
  std::string message;
};

using ValidationReport = std::vector<Violation>;

namespace detail {

inline double triangle_area(const Eigen::MatrixXd& pos, const Triangle& t) {
  const Eigen::VectorXd u = (pos.row(t[1]) - pos.row(t[0])).transpose();
  const Eigen::VectorXd v = (pos.row(t[2]) - pos.row(t[0])).transpose();
  const double uu = u.squaredNorm(), vv = v.squaredNorm(), uv = u.dot(v);
  return 0.5 * std::sqrt(std::max(uu * vv - uv * uv, 0.0));
}

// One entry per (undirected edge, incident face), sorted by edge then face.
struct EdgeIncidence {
  Index lo, hi, face;
  friend bool operator<(const EdgeIncidence& a, const EdgeIncidence& b) {
    return std::tie(a.lo, a.hi, a.face) < std::tie(b.lo, b.hi, b.face);
  }
};

inline std::vector<EdgeIncidence> edge_incidences(const std::vector<Triangle>& tris) {
  std::vector<EdgeIncidence> out;
  out.reserve(tris.size() * 3);
  for (std::size_t f = 0; f < tris.size(); ++f) {
    for (int k = 0; k < 3; ++k) {
      Index a = tris[f][k], b = tris[f][(k + 1) % 3];
      out.push_back({std::min(a, b), std::max(a, b), static_cast<Index>(f)});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Calls fn(lo, hi, first, last) once per distinct edge with the range of incidences.
template <typename Fn>
void for_each_edge(const std::vector<EdgeIncidence>& inc, Fn&& fn) {
  std::size_t i = 0;
  while (i < inc.size()) {
    std::size_t j = i + 1;
    while (j < inc.size() && inc[j].lo == inc[i].lo && inc[j].hi == inc[i].hi) ++j;
    fn(inc[i].lo, inc[i].hi, i, j);
    i = j;
  }
}

inline std::vector<bool> boundary_mask(Index vertex_count, const std::vector<Triangle>& tris) {
  std::vector<bool> mask(static_cast<std::size_t>(vertex_count), false);
  const auto inc = edge_incidences(tris);
  for_each_edge(inc, [&](Index lo, Index hi, std::size_t first, std::size_t last) {
    if (last - first == 1) {
      mask[static_cast<std::size_t>(lo)] = true;
      mask[static_cast<std::size_t>(hi)] = true;
    }
  });
  return mask;
}

}  // namespace detail

/// Lists every invariant violation of `mesh`; empty iff the mesh is valid.
inline ValidationReport validate(const ImmersedMesh& mesh) {
  ValidationReport report;
  const Index nv = mesh.vertex_count();
  const auto& pos = mesh.positions();
  const auto& tris = mesh.triangles();

  if (mesh.ambient_dim() < 3) {
    report.push_back({ViolationKind::ambient_dimension, 0,
                      "ambient dimension " + std::to_string(mesh.ambient_dim()) + " < 3"});
  }
  for (Index v = 0; v < nv; ++v) {
    if (!pos.row(v).allFinite()) {
      report.push_back({ViolationKind::non_finite_coordinate, v,
                        "non-finite coordinate at vertex " + std::to_string(v)});
    }
  }

  bool faces_ok = true;
  for (std::size_t f = 0; f < tris.size(); ++f) {
    const auto& t = tris[f];
    const auto fi = static_cast<Index>(f);
    if (std::any_of(t.begin(), t.end(), [&](Index i) { return i < 0 || i >= nv; })) {
      report.push_back({ViolationKind::index_out_of_range, fi,
                        "triangle " + std::to_string(f) + " references a missing vertex"});
      faces_ok = false;
      continue;
    }
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) {
      report.push_back({ViolationKind::degenerate_triangle, fi, "degenerate triangle " + std::to_string(f)});
      faces_ok = false;
      continue;
    }
    double longest = 0.0;
    for (int k = 0; k < 3; ++k) {
      longest = std::max(longest, (pos.row(t[k]) - pos.row(t[(k + 1) % 3])).squaredNorm());
    }
    const double area = detail::triangle_area(pos, t);
    if (!(area > 1e-14 * longest)) {
      report.push_back({ViolationKind::degenerate_triangle, fi, "degenerate triangle " + std::to_string(f)});
    }
  }
  // Topology checks assume every face has three distinct, existing vertices.
  if (!faces_ok) return report;

  const auto inc = detail::edge_incidences(tris);
  detail::for_each_edge(inc, [&](Index lo, Index hi, std::size_t first, std::size_t last) {
    if (last - first > 2) {
      std::ostringstream msg;
      msg << "non-manifold edge (" << lo << "," << hi << ") at triangle " << inc[first + 2].face;
      report.push_back({ViolationKind::non_manifold_edge, inc[first + 2].face, msg.str()});
    }
  });

  // Connectivity of the interior vertices through interior-interior edges.
  const auto on_boundary = detail::boundary_mask(nv, tris);
  std::vector<Index> parent(static_cast<std::size_t>(nv));
  std::iota(parent.begin(), parent.end(), Index{0});
  auto find = [&](Index x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  detail::for_each_edge(inc, [&](Index lo, Index hi, std::size_t, std::size_t) {
    if (!on_boundary[lo] && !on_boundary[hi]) parent[find(lo)] = find(hi);
  });
  Index root = -1;
  for (Index v = 0; v < nv; ++v) {
    if (on_boundary[v]) continue;
    if (root < 0) {
      root = find(v);
    } else if (find(v) != root) {
      report.push_back({ViolationKind::disconnected_interior, v,
                        "interior vertices disconnected at vertex " + std::to_string(v)});
      break;
    }
  }
  return report;
}

inline std::string describe(const ValidationReport& report) {
  std::string out;
  for (const auto& v : report) {
    if (!out.empty()) out += "; ";
    out += v.message;
  }
  return out;
}

/// Throws ValidationError listing every violation unless `mesh` is valid.
inline void require_valid(const ImmersedMesh& mesh) {
  const auto report = validate(mesh);
  if (!report.empty()) throw ValidationError("invalid mesh: " + describe(report));
}

struct BoundaryPartition {
  std::vector<Index> interior_indices;
  std::vector<Index> boundary_indices;

  bool closed() const { return boundary_indices.empty(); }
};

/// Splits vertices by whether they touch an edge with a single adjacent face.
inline BoundaryPartition boundary_partition(const ImmersedMesh& mesh) {
  require_valid(mesh);
  const auto mask = detail::boundary_mask(mesh.vertex_count(), mesh.triangles());
  BoundaryPartition part;
  for (Index v = 0; v < mesh.vertex_count(); ++v) {
    (mask[static_cast<std::size_t>(v)] ? part.boundary_indices : part.interior_indices).push_back(v);
  }
  return part;
}

/// Uniform scaling about the origin.
inline ImmersedMesh scale(const ImmersedMesh& mesh, double s) {
  if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("scale factor must be positive");
  return ImmersedMesh(mesh.positions() * s, mesh.triangles());
}

/// Rigid translation by `offset` (length ambient_dim).
inline ImmersedMesh translate(const ImmersedMesh& mesh, const Eigen::VectorXd& offset) {
  if (offset.size() != mesh.ambient_dim()) throw DomainError("offset dimension mismatch");
  return ImmersedMesh(mesh.positions().rowwise() + offset.transpose(), mesh.triangles());
}

/// Embeds R^N into R^M (M >= N) by zero padding.
inline ImmersedMesh lift(const ImmersedMesh& mesh, Index ambient_dim) {
  if (ambient_dim < mesh.ambient_dim()) throw DomainError("cannot lift into a smaller space");
  Eigen::MatrixXd pos = Eigen::MatrixXd::Zero(mesh.vertex_count(), ambient_dim);
  pos.leftCols(mesh.ambient_dim()) = mesh.positions();
  return ImmersedMesh(std::move(pos), mesh.triangles());
}

inline double total_area(const ImmersedMesh& mesh) {
  double a = 0.0;
  for (const auto& t : mesh.triangles()) a += detail::triangle_area(mesh.positions(), t);
  return a;
}

struct EdgeLengthRange {
  double min = 0.0;
  double max = 0.0;
};

inline EdgeLengthRange edge_length_range(const ImmersedMesh& mesh) {
  EdgeLengthRange r{std::numeric_limits<double>::infinity(), 0.0};
  for (const auto& t : mesh.triangles()) {
    for (int k = 0; k < 3; ++k) {
      const double len = (mesh.positions().row(t[k]) - mesh.positions().row(t[(k + 1) % 3])).norm();
      r.min = std::min(r.min, len);
      r.max = std::max(r.max, len);
    }
  }
  if (mesh.triangles().empty()) r.min = 0.0;
  return r;
}

}  // namespace nashbound
