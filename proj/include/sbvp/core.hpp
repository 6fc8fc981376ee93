#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <utility>

namespace sbvp {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Non-increasing mesh, or a required time missing from the mesh.
class MeshError : public Error {
public:
  using Error::Error;
};

/// Path or trajectory queried at a time that is not a mesh point.
class QueryError : public Error {
public:
  using Error::Error;
};

/// Dimension mismatch between arguments.
class ShapeError : public Error {
public:
  using Error::Error;
};

/// Invalid user configuration (monitor, quadrature, experiment settings).
class ConfigError : public Error {
public:
  using Error::Error;
};

/// Singular or ill-conditioned linear system.
class LinearAlgebraError : public Error {
public:
  using Error::Error;
};

/// Tableau that cannot be evaluated explicitly.
class UnsupportedTableauError : public Error {
public:
  using Error::Error;
};

/// The coarse Euler-Maruyama boundary system could not be solved.
class InitialGuessError : public Error {
public:
  InitialGuessError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

private:
  double residual_;
};

/// Newton iteration exhausted its budget; carries the best iterate seen.
class NonConvergenceError : public Error {
public:
  NonConvergenceError(const std::string& what, Vector best, double residual)
      : Error(what), best_(std::move(best)), residual_(residual) {}
  const Vector& best_iterate() const noexcept { return best_; }
  double residual() const noexcept { return residual_; }

private:
  Vector best_;
  double residual_;
};

}  // namespace sbvp
