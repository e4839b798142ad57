#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "support/fixtures.hpp"

namespace nb = nashbound;
using nb::testing::disk;
using nb::testing::sphere;

namespace {

bool has_kind(const nb::ValidationReport& r, nb::ViolationKind k) {
  return std::any_of(r.begin(), r.end(), [k](const nb::Violation& v) { return v.kind == k; });
}

}  // namespace

TEST(Validate, MinimalTriangleIsValid) { EXPECT_TRUE(nb::validate(nb::testing::unit_triangle()).empty()); }

TEST(Validate, RepeatedVertexIsDegenerate) {
  auto p = nb::testing::unit_triangle().positions();
  const auto report = nb::validate(nb::ImmersedMesh(p, {{0, 0, 1}}));
  ASSERT_EQ(report.size(), 1u);
  EXPECT_EQ(report[0].kind, nb::ViolationKind::degenerate_triangle);
  EXPECT_EQ(report[0].index, 0);
  EXPECT_EQ(report[0].message, "degenerate triangle 0");
}

TEST(Validate, IcosphereLevelTwoIsValid) { EXPECT_TRUE(nb::validate(sphere(2)).empty()); }

TEST(Validate, ZeroAreaTriangle) {
  Eigen::MatrixXd p(3, 3);
  p << 0, 0, 0, 1, 0, 0, 2, 0, 0;
  const auto report = nb::validate(nb::ImmersedMesh(p, {{0, 1, 2}}));
  ASSERT_EQ(report.size(), 1u);
  EXPECT_EQ(report[0].message, "degenerate triangle 0");
}

TEST(Validate, IndexOutOfRange) {
  const auto report = nb::validate(nb::ImmersedMesh(nb::testing::unit_triangle().positions(), {{0, 1, 3}}));
  EXPECT_TRUE(has_kind(report, nb::ViolationKind::index_out_of_range));
}

TEST(Validate, NonFiniteCoordinate) {
  auto p = nb::testing::unit_triangle().positions();
  p(1, 2) = std::nan("");
  const auto report = nb::validate(nb::ImmersedMesh(p, {{0, 1, 2}}));
  ASSERT_TRUE(has_kind(report, nb::ViolationKind::non_finite_coordinate));
  EXPECT_EQ(report[0].index, 1);
}

TEST(Validate, NonManifoldEdge) {
  Eigen::MatrixXd p(5, 3);
  p << 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, -1, 0, 0, 0, 1;
  const auto report = nb::validate(nb::ImmersedMesh(p, {{0, 1, 2}, {1, 0, 3}, {0, 1, 4}}));
  ASSERT_TRUE(has_kind(report, nb::ViolationKind::non_manifold_edge));
}

TEST(Validate, AmbientDimensionBelowThree) {
  Eigen::MatrixXd p(3, 2);
  p << 0, 0, 1, 0, 0, 1;
  EXPECT_TRUE(has_kind(nb::validate(nb::ImmersedMesh(p, {{0, 1, 2}})), nb::ViolationKind::ambient_dimension));
}

TEST(Validate, DisconnectedInterior) {
  // Two separate icospheres in one mesh: every vertex is interior.
  const auto a = sphere(0);
  Eigen::MatrixXd p(24, 3);
  p.topRows(12) = a.positions();
  p.bottomRows(12) = a.positions().array() + 5.0;
  auto tris = a.triangles();
  for (const auto& t : a.triangles()) tris.push_back({t[0] + 12, t[1] + 12, t[2] + 12});
  const auto report = nb::validate(nb::ImmersedMesh(p, tris));
  ASSERT_EQ(report.size(), 1u);
  EXPECT_EQ(report[0].kind, nb::ViolationKind::disconnected_interior);
}

TEST(Validate, RequireValidThrows) {
  auto p = nb::testing::unit_triangle().positions();
  EXPECT_THROW(nb::require_valid(nb::ImmersedMesh(p, {{0, 0, 1}})), nb::ValidationError);
}

TEST(BoundaryPartition, SingleTriangleIsAllBoundary) {
  const auto part = nb::boundary_partition(nb::testing::unit_triangle());
  EXPECT_TRUE(part.interior_indices.empty());
  EXPECT_EQ(part.boundary_indices, (std::vector<nb::Index>{0, 1, 2}));
}

TEST(BoundaryPartition, IcosphereIsClosed) {
  const auto part = nb::boundary_partition(sphere(1));
  EXPECT_TRUE(part.closed());
  EXPECT_EQ(part.interior_indices.size(), 42u);
}

TEST(BoundaryPartition, DiskBoundaryIsOuterRing) {
  const int rings = 4;
  const auto part = nb::boundary_partition(disk(rings));
  // Ring j holds 6j vertices; ring `rings` is the last block.
  const nb::Index first_outer = 1 + 3 * (rings - 1) * rings;
  ASSERT_EQ(part.boundary_indices.size(), static_cast<std::size_t>(6 * rings));
  for (std::size_t k = 0; k < part.boundary_indices.size(); ++k) {
    EXPECT_EQ(part.boundary_indices[k], first_outer + static_cast<nb::Index>(k));
  }
}

TEST(BoundaryPartition, IdempotentAndDisjoint) {
  const auto m = disk(6);
  const auto a = nb::boundary_partition(m), b = nb::boundary_partition(m);
  EXPECT_EQ(a.interior_indices, b.interior_indices);
  EXPECT_EQ(a.boundary_indices, b.boundary_indices);
  std::vector<nb::Index> all = a.interior_indices;
  all.insert(all.end(), a.boundary_indices.begin(), a.boundary_indices.end());
  std::sort(all.begin(), all.end());
  for (nb::Index v = 0; v < m.vertex_count(); ++v) EXPECT_EQ(all[static_cast<std::size_t>(v)], v);
}

TEST(BoundaryPartition, InvalidMeshThrows) {
  auto p = nb::testing::unit_triangle().positions();
  EXPECT_THROW(nb::boundary_partition(nb::ImmersedMesh(p, {{0, 0, 1}})), nb::ValidationError);
}

TEST(Scale, IdentityFactor) {
  const auto m = sphere(1);
  const auto s = nb::scale(m, 1.0);
  EXPECT_EQ(s.positions(), m.positions());
  EXPECT_EQ(s.triangles(), m.triangles());
}

TEST(Scale, SphereRadiusDoubles) {
  const auto s = nb::scale(sphere(2), 2.0);
  EXPECT_NEAR(s.positions().rowwise().norm().maxCoeff(), 2.0, 1e-14);
  EXPECT_NEAR(nb::enclosing_ball(s.positions()).minimal_radius, 2.0, 1e-12);
}

TEST(Scale, AreasScaleQuadratically) {
  const auto m = disk(4);
  const auto s = nb::scale(m, 3.0);
  for (std::size_t f = 0; f < m.triangles().size(); ++f) {
    const double a = nb::detail::triangle_area(m.positions(), m.triangles()[f]);
    EXPECT_NEAR(nb::detail::triangle_area(s.positions(), s.triangles()[f]), 9.0 * a, 1e-13);
  }
}

TEST(Scale, NonPositiveFactorThrows) {
  EXPECT_THROW(nb::scale(sphere(0), 0.0), nb::DomainError);
  EXPECT_THROW(nb::scale(sphere(0), -1.0), nb::DomainError);
}

TEST(Scale, ComposesMultiplicatively) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.1, 10.0);
  const auto m = sphere(2);
  for (int trial = 0; trial < 20; ++trial) {
    const double a = u(rng), b = u(rng);
    const auto lhs = nb::scale(nb::scale(m, a), b), rhs = nb::scale(m, a * b);
    const double d = (lhs.positions() - rhs.positions()).cwiseAbs().maxCoeff();
    EXPECT_LE(d, 1e-14 * a * b * 4.0);
  }
}

TEST(Lift, PadsWithZeros) {
  const auto m = nb::lift(sphere(0), 5);
  EXPECT_EQ(m.ambient_dim(), 5);
  EXPECT_TRUE(m.positions().rightCols(2).isZero());
  EXPECT_TRUE(nb::validate(m).empty());
  EXPECT_THROW(nb::lift(m, 3), nb::DomainError);
}

TEST(Noff, ReadsPlainOff) {
  std::istringstream in("OFF\n# comment\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 2\n");
  const auto m = nb::noff::read(in);
  EXPECT_EQ(m.ambient_dim(), 3);
  EXPECT_EQ(m.vertex_count(), 3);
  EXPECT_EQ(m.triangles()[0], (nb::Triangle{0, 1, 2}));
}

TEST(Noff, ReadsHigherDimension) {
  std::istringstream in("nOFF\n4\n3 1 0\n0 0 0 1\n1 0 0 1\n0 1 0 1\n3 0 1 2\n");
  const auto m = nb::noff::read(in);
  EXPECT_EQ(m.ambient_dim(), 4);
  EXPECT_DOUBLE_EQ(m.positions()(2, 3), 1.0);
}

TEST(Noff, MalformedInputs) {
  const char* bad[] = {
      "",
      "PLY\n3 1 0\n",
      "OFF\n3 1 0\n0 0 0\n1 0 0\n",                       // truncated
      "OFF\n3 1 0\n0 0 0\n1 0 x\n0 1 0\n3 0 1 2\n",       // bad number
      "OFF\n4 1 0\n0 0 0\n1 0 0\n0 1 0\n1 1 0\n4 0 1 2 3\n",  // quad face
      "OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 2\n7\n",    // trailing data
  };
  for (const char* text : bad) {
    std::istringstream in(text);
    EXPECT_THROW(nb::noff::read(in), nb::FormatError) << text;
  }
}

TEST(Noff, RoundTripIsExact) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (const auto& base : {sphere(2), nb::lift(disk(3), 6)}) {
    Eigen::MatrixXd p = base.positions();
    for (nb::Index i = 0; i < p.size(); ++i) p.data()[i] += u(rng) * 1e-7;
    const nb::ImmersedMesh m(p, base.triangles());
    std::stringstream ss;
    nb::noff::write(ss, m);
    const auto back = nb::noff::read(ss);
    EXPECT_EQ(back.positions(), m.positions());
    EXPECT_EQ(back.triangles(), m.triangles());
  }
}
