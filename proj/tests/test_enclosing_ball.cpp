#include <gtest/gtest.h>

#include <random>

#include "support/fixtures.hpp"

namespace nb = nashbound;

namespace {

Eigen::MatrixXd random_points(int count, int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXd p(count, dim);
  for (Eigen::Index i = 0; i < p.size(); ++i) p.data()[i] = g(rng);
  return p;
}

// Optimality certificate for a minimal ball: every support point lies on the
// sphere, every point is inside, and the center is a convex combination of
// the support points.
void expect_optimal(const Eigen::MatrixXd& pts, const nb::EnclosingBall& ball) {
  const double r = ball.minimal_radius;
  ASSERT_FALSE(ball.support.empty());
  ASSERT_LE(ball.support.size(), static_cast<std::size_t>(pts.cols() + 1));
  const auto k = static_cast<Eigen::Index>(ball.support.size());
  Eigen::MatrixXd a(pts.cols() + 1, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    const Eigen::VectorXd s = pts.row(ball.support[static_cast<std::size_t>(j)]).transpose();
    EXPECT_NEAR((s - ball.center).norm(), r, 1e-10 * std::max(1.0, r));
    a.col(j) << s, 1.0;
  }
  for (Eigen::Index i = 0; i < pts.rows(); ++i) {
    EXPECT_LE((pts.row(i).transpose() - ball.center).norm(), r * (1 + 1e-10) + 1e-14);
  }
  Eigen::VectorXd rhs(pts.cols() + 1);
  rhs << ball.center, 1.0;
  const Eigen::VectorXd weights = a.colPivHouseholderQr().solve(rhs);
  EXPECT_LE((a * weights - rhs).norm(), 1e-9 * std::max(1.0, r));
  EXPECT_GE(weights.minCoeff(), -1e-9);
}

}  // namespace

TEST(EnclosingBall, SinglePoint) {
  Eigen::MatrixXd p(1, 3);
  p << 1, 2, 3;
  const auto b = nb::enclosing_ball(p);
  EXPECT_EQ(b.center, Eigen::Vector3d(1, 2, 3));
  EXPECT_EQ(b.minimal_radius, 0.0);
}

TEST(EnclosingBall, TwoPoints) {
  Eigen::MatrixXd p(2, 4);
  p << 0, 0, 0, 0, 2, 0, 0, 0;
  const auto b = nb::enclosing_ball(p);
  EXPECT_NEAR((b.center - Eigen::Vector4d(1, 0, 0, 0)).norm(), 0.0, 1e-15);
  EXPECT_NEAR(b.minimal_radius, 1.0, 1e-15);
  EXPECT_NEAR(b.radius, 1.0 + nb::enclosing_ball_inflation, 1e-15);
}

TEST(EnclosingBall, ObtuseTriangleUsesLongestSide) {
  Eigen::MatrixXd p(3, 3);
  p << 0, 0, 0, 4, 0, 0, 2, 0.5, 0;
  const auto b = nb::enclosing_ball(p);
  EXPECT_NEAR(b.minimal_radius, 2.0, 1e-14);
  EXPECT_EQ(b.support.size(), 2u);
}

TEST(EnclosingBall, RegularSimplexCircumsphere) {
  // Standard basis of R^4: circumcenter (1/4,...), radius sqrt(3)/2.
  const Eigen::MatrixXd p = Eigen::MatrixXd::Identity(4, 4);
  const auto b = nb::enclosing_ball(p);
  EXPECT_NEAR(b.minimal_radius, std::sqrt(3.0) / 2.0, 1e-14);
  EXPECT_NEAR((b.center - Eigen::Vector4d::Constant(0.25)).norm(), 0.0, 1e-14);
}

TEST(EnclosingBall, IcosphereIsUnitBall) {
  const auto m = nb::testing::sphere(3);
  const auto b = nb::enclosing_ball(m.positions());
  EXPECT_NEAR(b.minimal_radius, 1.0, 1e-12);
  EXPECT_LE(b.center.norm(), 1e-12);
  expect_optimal(m.positions(), b);
}

TEST(EnclosingBall, DuplicatePointsAndDegenerateSets) {
  Eigen::MatrixXd p(6, 3);
  p << 1, 1, 1, 1, 1, 1, 1, 1, 1, 3, 1, 1, 3, 1, 1, 2, 1, 1;  // collinear, with repeats
  const auto b = nb::enclosing_ball(p);
  EXPECT_NEAR(b.minimal_radius, 1.0, 1e-14);
  EXPECT_NEAR((b.center - Eigen::Vector3d(2, 1, 1)).norm(), 0.0, 1e-14);
}

TEST(EnclosingBall, MatchesBruteForceInThePlane) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 5; ++trial) {
    const auto p = random_points(100, 2, rng);
    const auto b = nb::enclosing_ball(p);
    const auto oracle = nb::testing::brute_force_ball(p);
    ASSERT_TRUE(oracle.ok);
    EXPECT_NEAR(b.minimal_radius, oracle.radius, 1e-10 * oracle.radius);
    EXPECT_LE((b.center - oracle.center).norm(), 1e-8);
  }
}

TEST(EnclosingBall, MatchesBruteForceInR4) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 3; ++trial) {
    const auto p = random_points(30, 4, rng);
    const auto b = nb::enclosing_ball(p);
    const auto oracle = nb::testing::brute_force_ball(p);
    ASSERT_TRUE(oracle.ok);
    EXPECT_NEAR(b.minimal_radius, oracle.radius, 1e-10 * oracle.radius);
    EXPECT_LE((b.center - oracle.center).norm(), 1e-8);
  }
}

TEST(EnclosingBall, HundredPointsInR4AreCertified) {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 10; ++trial) {
    const auto p = random_points(100, 4, rng);
    expect_optimal(p, nb::enclosing_ball(p));
  }
}

TEST(EnclosingBall, HigherDimensionalLift) {
  const auto m = nb::lift(nb::testing::disk(6, 1.5), 7);
  const auto b = nb::enclosing_ball(m.positions());
  EXPECT_NEAR(b.minimal_radius, 1.5, 1e-12);
  expect_optimal(m.positions(), b);
}

TEST(EnclosingBall, EveryPointStrictlyInside) {
  std::mt19937_64 rng(45);
  const auto p = random_points(200, 5, rng);
  const auto b = nb::enclosing_ball(p);
  for (Eigen::Index i = 0; i < p.rows(); ++i) EXPECT_LT((p.row(i).transpose() - b.center).norm(), b.radius);
}

TEST(EnclosingBall, TranslationAndScaleEquivariance) {
  std::mt19937_64 rng(46);
  const auto p = random_points(60, 3, rng);
  const auto b = nb::enclosing_ball(p);
  const Eigen::RowVector3d shift(5.0, -2.0, 0.25);
  const auto moved = nb::enclosing_ball((3.0 * p).rowwise() + shift);
  EXPECT_NEAR(moved.minimal_radius, 3.0 * b.minimal_radius, 1e-10);
  EXPECT_LE((moved.center - (3.0 * b.center + shift.transpose())).norm(), 1e-9);
}

TEST(EnclosingBall, Deterministic) {
  std::mt19937_64 rng(47);
  const auto p = random_points(80, 4, rng);
  const auto a = nb::enclosing_ball(p), b = nb::enclosing_ball(p);
  EXPECT_EQ(a.center, b.center);
  EXPECT_EQ(a.radius, b.radius);
  EXPECT_EQ(a.support, b.support);
}

TEST(EnclosingBall, RejectsBadInput) {
  EXPECT_THROW(nb::enclosing_ball(Eigen::MatrixXd(0, 3)), nb::DomainError);
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(2, 3);
  p(1, 1) = std::numeric_limits<double>::infinity();
  EXPECT_THROW(nb::enclosing_ball(p), nb::DomainError);
}
