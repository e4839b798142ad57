#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "nashbound/errors.hpp"
#include "nashbound/mesh.hpp"

namespace nashbound {

using SparseMatrix = Eigen::SparseMatrix<double>;

/**
 * Discrete Dirichlet energy and L2 inner product of a mesh.
 *
 * `stiffness` is the cotangent matrix: the off-diagonal entry of edge (i,j)
 * is -1/2 (cot a + cot b) over the angles opposite that edge, and each
 * diagonal entry makes its row sum to zero. It is symmetric positive
 * semidefinite with constants in its kernel.
 *
 * `mass` is the lumped mixed-Voronoi area of each vertex: circumcentric
 * Voronoi parts for non-obtuse triangles, and area/2 at the obtuse corner
 * (area/4 at the others) for obtuse ones. Every triangle is partitioned
 * among its corners, so the masses sum to the total surface area.
 *
 * The discrete Laplacian is div grad = -mass^-1 * stiffness.
 */
struct OperatorPair {
  SparseMatrix stiffness;
  Eigen::VectorXd mass;
  std::vector<bool> on_boundary;
  /// Edges whose off-diagonal stiffness entry is positive (non-Delaunay).
  Index delaunay_violations = 0;

  Index size() const { return mass.size(); }
};

namespace detail {

struct CornerGeometry {
  double cot[3];      // cot of the angle at each corner
  double edge_sq[3];  // squared length of the edge opposite each corner
  double area;
};

inline CornerGeometry corner_geometry(const Eigen::MatrixXd& pos, const Triangle& t) {
  CornerGeometry g{};
  const Eigen::VectorXd e0 = (pos.row(t[2]) - pos.row(t[1])).transpose();  // opposite corner 0
  const Eigen::VectorXd e1 = (pos.row(t[0]) - pos.row(t[2])).transpose();
  const Eigen::VectorXd e2 = (pos.row(t[1]) - pos.row(t[0])).transpose();
  g.edge_sq[0] = e0.squaredNorm();
  g.edge_sq[1] = e1.squaredNorm();
  g.edge_sq[2] = e2.squaredNorm();
  const double twice_area = std::sqrt(std::max(g.edge_sq[1] * g.edge_sq[2] - std::pow(e1.dot(e2), 2), 0.0));
  g.area = 0.5 * twice_area;
  // Angle at corner k is between the two edges leaving it.
  g.cot[0] = -e1.dot(e2) / twice_area;
  g.cot[1] = -e2.dot(e0) / twice_area;
  g.cot[2] = -e0.dot(e1) / twice_area;
  return g;
}

}  // namespace detail

/// Builds the operator pair. Throws ValidationError if the mesh is invalid.
inline OperatorPair assemble(const ImmersedMesh& mesh) {
  require_valid(mesh);
  const Index nv = mesh.vertex_count();
  const auto& pos = mesh.positions();

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(mesh.triangles().size() * 6);
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(nv);
  Eigen::VectorXd mass = Eigen::VectorXd::Zero(nv);

  for (const auto& t : mesh.triangles()) {
    const auto g = detail::corner_geometry(pos, t);
    for (int k = 0; k < 3; ++k) {
      const Index i = t[(k + 1) % 3], j = t[(k + 2) % 3];
      const double w = 0.5 * g.cot[k];
      triplets.emplace_back(i, j, -w);
      triplets.emplace_back(j, i, -w);
      diag[i] += w;
      diag[j] += w;
    }
    const int obtuse = g.cot[0] < 0.0 ? 0 : g.cot[1] < 0.0 ? 1 : g.cot[2] < 0.0 ? 2 : -1;
    for (int k = 0; k < 3; ++k) {
      if (obtuse >= 0) {
        mass[t[k]] += (k == obtuse ? 0.5 : 0.25) * g.area;
      } else {
        // Voronoi share: the two edges at corner k, each weighted by the
        // cotangent of the angle opposite it.
        const int a = (k + 1) % 3, b = (k + 2) % 3;
        mass[t[k]] += (g.edge_sq[b] * g.cot[b] + g.edge_sq[a] * g.cot[a]) / 8.0;
      }
    }
  }
  for (Index v = 0; v < nv; ++v) triplets.emplace_back(v, v, diag[v]);

  OperatorPair ops;
  ops.stiffness.resize(nv, nv);
  ops.stiffness.setFromTriplets(triplets.begin(), triplets.end());
  ops.stiffness.makeCompressed();
  ops.mass = std::move(mass);
  ops.on_boundary = detail::boundary_mask(nv, mesh.triangles());

  const double scale = ops.stiffness.coeffs().cwiseAbs().maxCoeff();
  for (Index col = 0; col < ops.stiffness.outerSize(); ++col) {
    for (SparseMatrix::InnerIterator it(ops.stiffness, col); it; ++it) {
      if (it.row() < it.col() && it.value() > 1e-12 * scale) ++ops.delaunay_violations;
    }
  }
  return ops;
}

/// Per-vertex values with a reliability flag (false on boundary vertices).
struct VertexField {
  Eigen::VectorXd values;
  std::vector<bool> reliable;
};

/// Discrete div grad of `f`. Boundary values use one-sided stencils and are
/// flagged unreliable.
inline VertexField laplacian(const OperatorPair& ops, const Eigen::VectorXd& f) {
  if (f.size() != ops.size()) throw DomainError("field length does not match vertex count");
  VertexField out;
  out.values = -(ops.stiffness * f).cwiseQuotient(ops.mass);
  out.reliable.resize(ops.on_boundary.size());
  std::transform(ops.on_boundary.begin(), ops.on_boundary.end(), out.reliable.begin(),
                 [](bool b) { return !b; });
  return out;
}

/// Mean curvature vector H = tr(alpha), one row per interior vertex.
struct CurvatureField {
  std::vector<Index> vertices;
  Eigen::MatrixXd vectors;  // vertices.size() x ambient_dim
  Eigen::VectorXd norms;
  double sup_norm = 0.0;
};

/// H at interior vertices, from the identity div grad (position) = H.
inline CurvatureField mean_curvature(const ImmersedMesh& mesh, const OperatorPair& ops) {
  if (ops.size() != mesh.vertex_count()) throw DomainError("operator size does not match mesh");
  CurvatureField field;
  for (Index v = 0; v < mesh.vertex_count(); ++v) {
    if (!ops.on_boundary[static_cast<std::size_t>(v)]) field.vertices.push_back(v);
  }
  if (field.vertices.empty()) throw DomainError("curvature undefined: mesh has no interior vertices");

  const Eigen::MatrixXd lap = -(ops.stiffness * mesh.positions());
  const auto n = static_cast<Index>(field.vertices.size());
  field.vectors.resize(n, mesh.ambient_dim());
  for (Index k = 0; k < n; ++k) {
    const Index v = field.vertices[static_cast<std::size_t>(k)];
    field.vectors.row(k) = lap.row(v) / ops.mass[v];
  }
  field.norms = field.vectors.rowwise().norm();
  field.sup_norm = field.norms.maxCoeff();
  return field;
}

struct RayleighQuotient {
  double value = 0.0;
  bool clamped = false;  // nonzero boundary values were set to zero
};

/// (f' K f) / (f' M f) after zeroing `f` on the boundary.
inline RayleighQuotient rayleigh_quotient(const OperatorPair& ops, const BoundaryPartition& part,
                                          Eigen::VectorXd f) {
  if (f.size() != ops.size()) throw DomainError("field length does not match vertex count");
  RayleighQuotient rq;
  for (Index b : part.boundary_indices) {
    if (f[b] != 0.0) {
      rq.clamped = true;
      f[b] = 0.0;
    }
  }
  const double denom = f.dot(ops.mass.cwiseProduct(f));
  if (!(denom > 0.0)) throw DomainError("Rayleigh quotient of a field that vanishes on the interior");
  rq.value = std::max(0.0, f.dot(ops.stiffness * f) / denom);
  return rq;
}

/// Writes a sparse matrix as "row col value" lines, column-major order.
inline void write_coordinate_triples(std::ostream& out, const SparseMatrix& m) {
  char buf[64];
  for (Index col = 0; col < m.outerSize(); ++col) {
    for (SparseMatrix::InnerIterator it(m, col); it; ++it) {
      std::snprintf(buf, sizeof buf, "%lld %lld %.17g\n", static_cast<long long>(it.row()),
                    static_cast<long long>(it.col()), it.value());
      out << buf;
    }
  }
}

}  // namespace nashbound
