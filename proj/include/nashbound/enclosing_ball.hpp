#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Core>
#include <Eigen/QR>

#include "nashbound/errors.hpp"
#include "nashbound/mesh.hpp"

namespace nashbound {

/// Enclosing ball inflation applied so that every point is strictly inside.
inline constexpr double enclosing_ball_inflation = 1e-9;

struct EnclosingBall {
  Eigen::VectorXd center;
  double minimal_radius = 0.0;  // radius of the minimal ball
  double radius = 0.0;          // minimal_radius * (1 + enclosing_ball_inflation)
  std::vector<Index> support;   // points on the boundary of the minimal ball
};

namespace detail {

class WelzlSolver {
 public:
  explicit WelzlSolver(const Eigen::MatrixXd& points) : pts_(points), dim_(points.cols()) {}

  EnclosingBall solve() {
    order_.resize(static_cast<std::size_t>(pts_.rows()));
    std::iota(order_.begin(), order_.end(), Index{0});
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
    std::shuffle(order_.begin(), order_.end(), rng);

    std::vector<Index> support;
    move_to_front(order_.size(), support);

    EnclosingBall ball;
    ball.center = center_;
    ball.minimal_radius = std::sqrt(std::max(sq_radius_, 0.0));
    ball.support = best_support_;
    std::sort(ball.support.begin(), ball.support.end());
    ball.radius = ball.minimal_radius * (1.0 + enclosing_ball_inflation);
    return ball;
  }

 private:
  bool outside(Index p) const {
    if (sq_radius_ < 0.0) return true;
    const double d = (pts_.row(p).transpose() - center_).squaredNorm();
    return d > sq_radius_ * (1.0 + 1e-13) + 1e-300;
  }

  // Smallest ball with every support point on its boundary: the center lies in
  // the affine hull, so it solves 2 (p_a - p_0) . (c - p_0) = |p_a - p_0|^2.
  void ball_through(const std::vector<Index>& support) {
    best_support_ = support;
    if (support.empty()) {
      center_ = Eigen::VectorXd::Zero(dim_);
      sq_radius_ = -1.0;
      return;
    }
    const Eigen::VectorXd p0 = pts_.row(support[0]).transpose();
    const auto k = static_cast<Index>(support.size()) - 1;
    center_ = p0;
    if (k > 0) {
      Eigen::MatrixXd span(dim_, k);
      for (Index a = 0; a < k; ++a) span.col(a) = pts_.row(support[a + 1]).transpose() - p0;
      const Eigen::MatrixXd gram = 2.0 * span.transpose() * span;
      const Eigen::VectorXd rhs = span.colwise().squaredNorm().transpose();
      const Eigen::VectorXd lambda = gram.completeOrthogonalDecomposition().solve(rhs);
      center_ = p0 + span * lambda;
    }
    sq_radius_ = 0.0;
    for (Index s : support) sq_radius_ = std::max(sq_radius_, (pts_.row(s).transpose() - center_).squaredNorm());
  }

  void move_to_front(std::size_t end, std::vector<Index>& support) {
    ball_through(support);
    if (static_cast<Index>(support.size()) == dim_ + 1) return;
    for (std::size_t i = 0; i < end; ++i) {
      const Index p = order_[i];
      if (!outside(p)) continue;
      support.push_back(p);
      move_to_front(i, support);
      support.pop_back();
      std::rotate(order_.begin(), order_.begin() + static_cast<std::ptrdiff_t>(i),
                  order_.begin() + static_cast<std::ptrdiff_t>(i) + 1);
    }
  }

  const Eigen::MatrixXd& pts_;
  Index dim_;
  std::vector<Index> order_;
  Eigen::VectorXd center_;
  double sq_radius_ = -1.0;
  std::vector<Index> best_support_;
};

}  // namespace detail

/**
 * Minimal enclosing ball of the rows of `points` (Welzl's randomized
 * incremental algorithm with move-to-front, fixed seed). The returned
 * `radius` is inflated by enclosing_ball_inflation for strict containment.
 */
inline EnclosingBall enclosing_ball(const Eigen::MatrixXd& points) {
  if (points.rows() == 0) throw DomainError("enclosing ball of an empty point set");
  if (!points.allFinite()) throw DomainError("enclosing ball of non-finite points");
  return detail::WelzlSolver(points).solve();
}

}  // namespace nashbound
