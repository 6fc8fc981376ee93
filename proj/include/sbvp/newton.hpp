#pragma once

#include "sbvp/core.hpp"

#include <functional>
#include <vector>

namespace sbvp {

struct NewtonConfig {
  double tol = 1e-11;          ///< stop when ||F||_2 <= tol
  int max_iter = 50;
  double fd_epsilon = 1e-7;    ///< column step eps_k = fd_epsilon * (1 + |s_k|)
  bool fd_central = false;
  double lambda_init = 1.0;
  double lambda_factor = 0.5;
  double lambda_min = 1.0 / 1024.0;
  /// Minimum-norm least-squares steps instead of LU; singular Jacobians are then allowed.
  bool min_norm_steps = false;

  void validate() const;
};

struct NewtonTraceEntry {
  int iteration;
  double residual_norm;
  double lambda;
};

struct NewtonResult {
  Vector solution;
  int iterations = 0;
  double residual_norm = 0.0;
  std::vector<NewtonTraceEntry> trace;
};

using ResidualFn = std::function<Vector(const Vector&)>;
/// J(s) given s and F(s).
using JacobianFn = std::function<Matrix(const Vector&, const Vector&)>;

/// s_{k+1} = s_k - lambda_k J^{-1} F(s_k). lambda_k starts at lambda_init and is reduced by
/// lambda_factor while ||F(s_{k+1})|| > (1 - lambda_k / 2) ||F(s_k)||, never below lambda_min.
/// Throws LinearAlgebraError when an LU pivot falls below 1e-14 ||J|| and
/// NonConvergenceError after max_iter iterations.
NewtonResult damped_newton(const ResidualFn& residual, const JacobianFn& jacobian,
                           const Vector& s0, const NewtonConfig& cfg);

/// Dense forward (or central) difference Jacobian of `residual` at s.
Matrix fd_jacobian_dense(const ResidualFn& residual, const Vector& s, const Vector& f_at_s,
                         double fd_epsilon, bool central = false);

/// LU solve of J x = rhs with the pivot check used by damped_newton.
Vector solve_checked(const Matrix& jacobian, const Vector& rhs);

}  // namespace sbvp
