#pragma once

#include "sbvp/core.hpp"

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace sbvp {

/// f(x, t) -> d-vector.
using DriftFn = std::function<Vector(const Vector&, double)>;
/// g(x, t) -> d x m matrix, one column per independent Stratonovich noise.
using DiffusionFn = std::function<Matrix(const Vector&, double)>;

/// sum_j A_j X(tau_j) = c
struct MultiPointBC {
  std::vector<double> switching_points;
  std::vector<Matrix> matrices;
  Vector rhs;

  int dim() const noexcept { return static_cast<int>(rhs.size()); }
  std::size_t count() const noexcept { return switching_points.size(); }
  /// Throws ConfigError on inconsistent sizes or non-increasing switching points.
  void validate() const;
};

/// int_0^T A'(t) X(t) dt = c, with A absolutely continuous.
struct FunctionalBC {
  std::function<Matrix(double)> integrand_matrix;
  Vector rhs;
};

/// dX = f(X,t) dt + g(X,t) o dW on [0, T] with a multi-point boundary condition.
struct SbvpProblem {
  std::string name;
  int dim = 1;
  int noise_dim = 1;
  double horizon = 1.0;
  DriftFn drift;
  DiffusionFn diffusion;
  MultiPointBC bc;

  /// Checks dimensions and that tau_1 = 0, tau_Ns = T.
  void validate() const;
};

/// sum_j A_j states[j] - c
Vector boundary_residual(const MultiPointBC& bc, std::span<const Vector> states);

/// Composite trapezoid at the switching points: A_j = w_j A'(tau_j).
MultiPointBC discretize_functional_bc(const FunctionalBC& fbc,
                                      std::span<const double> switching_points);

/// `count` equispaced switching points on [0, horizon]; endpoints exact.
std::vector<double> equispaced_points(std::size_t count, double horizon = 1.0);

// Built-in test problems on [0, 1].

/// dX = 1 o dW with int_0^1 X ds = 0 discretized on `switching_points`.
SbvpProblem make_tp1(std::span<const double> switching_points);
/// dX = (AX + a) dt + b o dW, X1(0) = X1(1) = 0.
SbvpProblem make_tp2(double c1 = 1.0, double c2 = 1.0);
/// dX = B1 X o dW1 + B2 X o dW2, X1(0) + X2(0) = 1, X2(1) = 1.
SbvpProblem make_tp3();

/// Looks up "tp1", "tp2", "tp3"; throws ConfigError for anything else.
SbvpProblem make_problem(const std::string& id, std::span<const double> switching_points,
                         double c1 = 1.0, double c2 = 1.0);

}  // namespace sbvp
