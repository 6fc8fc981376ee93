#pragma once

#include "sbvp/core.hpp"
#include "sbvp/paths.hpp"
#include "sbvp/shooting.hpp"

#include <Eigen/Sparse>

#include <functional>
#include <vector>

namespace sbvp {

/// L[X] = D^n X + a_{n-1}(t) D^{n-1} X + ... + a_0(t) X = forcing + noise_scale dW/dt,
/// with sum_j alpha_ij X(tau_j) = c_i, i = 1..n.
struct LinearOperatorSpec {
  int order = 1;
  std::vector<std::function<double(double)>> coefficients;  ///< a_0 .. a_{n-1}
  Matrix boundary;                                          ///< n x N_s, entry (i, j) = alpha_ij
  Vector rhs;                                               ///< c, length n
  std::vector<double> switching_points;
  double forcing = 0.0;      ///< constant deterministic inhomogeneity (per unit time)
  double noise_scale = 1.0;

  void validate() const;
};

/// First-order form dY + A(t) Y dt = dW-forcing with Y_i = D^{n-i} X.
struct CompanionSystem {
  int order = 1;
  std::function<Matrix(double)> matrix;  ///< A(t)
  std::vector<Matrix> phi;               ///< boundary blocks, nonzeros only in the last column
};

CompanionSystem to_first_order(const LinearOperatorSpec& spec);

/// Lambda Y = w: one block row Y^{j+1} + (h_j A(t_j) - I) Y^j = w_j per mesh step,
/// last block row sum_j Phi_j Y^{m(j)} = c.
struct FdSystem {
  Eigen::SparseMatrix<double> lambda;
  Vector w;
  int order = 1;
  std::size_t mesh_size = 0;

  Matrix dense() const { return Matrix(lambda); }
};

FdSystem assemble_system(const LinearOperatorSpec& spec, const BaseMesh& mesh,
                         const WienerPath& path);

/// Stacked Y on the mesh (order x mesh size). Dense LU up to `dense_limit` unknowns,
/// sparse LU beyond. Throws LinearAlgebraError if Lambda is singular.
Matrix solve_fd_system(const FdSystem& system, std::size_t dense_limit = 128);

/// X = Y_n on the mesh as a one-dimensional SolutionPath; `derivatives` (optional) receives
/// the full Y matrix.
SolutionPath solve_fd(const LinearOperatorSpec& spec, const BaseMesh& mesh, const WienerPath& path,
                      Matrix* derivatives = nullptr);

/// dX = dW with trapezoid-discretized int_0^1 X ds = 0 on the given switching points.
LinearOperatorSpec fd_spec_tp1(std::span<const double> switching_points);
/// X'' = c1 + c2 dW/dt with X(0) = X(1) = 0.
LinearOperatorSpec fd_spec_tp2(double c1, double c2);

}  // namespace sbvp
