#pragma once

#include "sbvp/core.hpp"
#include "sbvp/paths.hpp"
#include "sbvp/problems.hpp"

#include <vector>

namespace sbvp {

/// Piecewise-linear interpolant of boundary-consistent Euler-Maruyama anchors.
class ThetaTrajectory {
public:
  ThetaTrajectory(std::vector<double> switching_points, std::vector<Vector> anchors,
                  double boundary_residual = 0.0);

  /// Linear interpolation between the anchors of the enclosing switching interval.
  Vector at(double t) const;

  const std::vector<double>& switching_points() const noexcept { return points_; }
  const std::vector<Vector>& anchors() const noexcept { return anchors_; }
  /// ||sum_j A_j theta_j - c||_2 achieved by the anchors.
  double boundary_residual() const noexcept { return residual_; }
  double max_anchor_norm() const noexcept { return max_anchor_norm_; }

private:
  std::vector<double> points_;
  std::vector<Vector> anchors_;
  double residual_;
  double max_anchor_norm_ = 0.0;
};

inline Vector theta_at(const ThetaTrajectory& theta, double t) { return theta.at(t); }

struct CoarseEmOptions {
  double tol = 1e-10;
  int max_iter = 50;
  /// Accepted residual when the boundary map is singular: abs_floor * (1 + ||c||).
  double singular_residual = 1e-8;
};

/// Anchors obtained by forward Euler-Maruyama substitution from theta_1.
std::vector<Vector> coarse_em_anchors(const SbvpProblem& problem, const WienerPath& path,
                                      const Vector& first_anchor);

/// Solves the coarse Euler-Maruyama boundary system for the anchors at the switching points.
/// The recursion is substituted forward so only theta_1 (d unknowns) is root-found, with
/// minimum-norm Newton steps. Throws InitialGuessError if the boundary residual stays above
/// `singular_residual * (1 + ||c||)`.
ThetaTrajectory solve_coarse_em(const SbvpProblem& problem, const WienerPath& path,
                                const CoarseEmOptions& options = {});

}  // namespace sbvp
