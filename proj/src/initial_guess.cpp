#include "sbvp/initial_guess.hpp"

#include "sbvp/integrators.hpp"
#include "sbvp/newton.hpp"

#include <algorithm>

namespace sbvp {

ThetaTrajectory::ThetaTrajectory(std::vector<double> switching_points, std::vector<Vector> anchors,
                                 double boundary_residual)
    : points_(std::move(switching_points)), anchors_(std::move(anchors)),
      residual_(boundary_residual) {
  if (points_.size() < 2 || points_.size() != anchors_.size())
    throw ShapeError("theta needs one anchor per switching point (at least two)");
  for (const auto& a : anchors_) max_anchor_norm_ = std::max(max_anchor_norm_, a.norm());
}

Vector ThetaTrajectory::at(double t) const {
  if (t < points_.front() || t > points_.back()) throw QueryError("theta queried outside [0, T]");
  auto it = std::upper_bound(points_.begin(), points_.end(), t);
  std::size_t i = (it == points_.begin()) ? 0 : static_cast<std::size_t>(it - points_.begin()) - 1;
  if (i + 1 >= points_.size()) return anchors_.back();
  if (t == points_[i]) return anchors_[i];
  const double left = points_[i], right = points_[i + 1];
  const double w = (t - left) / (right - left);
  return w * anchors_[i + 1] + ((right - t) / (right - left)) * anchors_[i];
}

std::vector<Vector> coarse_em_anchors(const SbvpProblem& problem, const WienerPath& path,
                                      const Vector& first_anchor) {
  const auto& taus = problem.bc.switching_points;
  std::vector<Vector> anchors;
  anchors.reserve(taus.size());
  anchors.push_back(first_anchor);
  for (std::size_t j = 0; j + 1 < taus.size(); ++j) {
    const Vector dw = path.increment(taus[j], taus[j + 1]);
    anchors.push_back(em_step(problem, anchors.back(), taus[j], taus[j + 1] - taus[j], dw));
  }
  return anchors;
}

ThetaTrajectory solve_coarse_em(const SbvpProblem& problem, const WienerPath& path,
                                const CoarseEmOptions& options) {
  path.mesh().require_points(problem.bc.switching_points);
  const auto boundary = [&](const Vector& first) {
    return boundary_residual(problem.bc, coarse_em_anchors(problem, path, first));
  };

  NewtonConfig cfg;
  cfg.tol = options.tol;
  cfg.max_iter = options.max_iter;
  cfg.min_norm_steps = true;
  const JacobianFn jac = [&](const Vector& s, const Vector& f) {
    return fd_jacobian_dense(boundary, s, f, cfg.fd_epsilon);
  };

  Vector first = Vector::Zero(problem.dim);
  double residual = 0.0;
  try {
    const auto result = damped_newton(boundary, jac, first, cfg);
    first = result.solution;
    residual = result.residual_norm;
  } catch (const NonConvergenceError& e) {
    // Singular boundary maps stall at the least-squares residual.
    const double limit = options.singular_residual * (1.0 + problem.bc.rhs.norm());
    if (!(e.residual() <= limit))
      throw InitialGuessError("coarse Euler-Maruyama boundary system not solvable", e.residual());
    first = e.best_iterate();
    residual = e.residual();
  }
  return ThetaTrajectory(problem.bc.switching_points, coarse_em_anchors(problem, path, first),
                         residual);
}

}  // namespace sbvp
