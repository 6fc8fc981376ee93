#pragma once

#include "sbvp/adaptive_mesh.hpp"
#include "sbvp/core.hpp"
#include "sbvp/newton.hpp"
#include "sbvp/paths.hpp"
#include "sbvp/problems.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace sbvp {

/// Flat shooting vector: node k occupies entries [k d, (k + 1) d).
class ShootingVector {
public:
  ShootingVector(Vector values, int dim);
  static ShootingVector zeros(std::size_t nodes, int dim);

  int dim() const noexcept { return dim_; }
  std::size_t node_count() const noexcept { return static_cast<std::size_t>(values_.size() / dim_); }
  Eigen::Index offset(std::size_t node) const { return static_cast<Eigen::Index>(node) * dim_; }
  std::size_t node_of(Eigen::Index entry) const { return static_cast<std::size_t>(entry / dim_); }

  auto node(std::size_t k) { return values_.segment(offset(k), dim_); }
  auto node(std::size_t k) const { return values_.segment(offset(k), dim_); }

  const Vector& values() const noexcept { return values_; }
  Vector& values() noexcept { return values_; }

private:
  Vector values_;
  int dim_;
};

/// D = d * (number of distinct shooting nodes).
std::size_t shooting_dimension(const ShootingMesh& mesh, int dim);

/// A trajectory on the base mesh (one column per mesh point).
struct SolutionPath {
  std::vector<double> times;
  Matrix states;
  std::string method;
  std::vector<std::size_t> shooting_nodes;
  std::uint64_t realization = 0;

  Vector at_index(std::size_t k) const { return states.col(static_cast<Eigen::Index>(k)); }
  std::size_t size() const noexcept { return times.size(); }
};

/// Matching blocks s_{k+1} - X(t_{k+1}; t_k, s_k) integrated with the full R3 scheme on the
/// base mesh, followed by the boundary block sum_j A_j s_{tau_j} - c.
Vector assemble_residual(const SbvpProblem& problem, const ShootingMesh& mesh,
                         const WienerPath& path, const Vector& s);

/// Block-bidiagonal Jacobian: -Gamma blocks by finite differences, identity super-blocks,
/// boundary blocks A_j. Entries outside the block pattern are exactly zero.
Matrix fd_jacobian(const SbvpProblem& problem, const ShootingMesh& mesh, const WienerPath& path,
                   const Vector& s, double fd_epsilon, bool central = false);

enum class ShootingMode { Adaptive, Fixed, Simple };

struct SolveOptions {
  ShootingMode mode = ShootingMode::Adaptive;
  std::size_t fixed_interior = 0;  ///< interior nodes per switching interval in Fixed mode
  MonitorSpec monitor;
  NewtonConfig newton;
};

struct SolveResult {
  SolutionPath path;
  ShootingMesh mesh;
  NewtonResult newton;
};

/// Builds the shooting mesh, starts Newton from theta at the nodes, solves F(s) = 0 on the
/// frozen path and reconstructs the solution on the base mesh with the full R3 scheme.
SolveResult solve(const SbvpProblem& problem, const WienerPath& path, const SolveOptions& options);

/// Newton on a prescribed mesh from a prescribed start.
NewtonResult solve_shooting_system(const SbvpProblem& problem, const ShootingMesh& mesh,
                                   const WienerPath& path, const Vector& s0,
                                   const NewtonConfig& cfg);

/// Integrates each shooting segment from its converged node value.
SolutionPath reconstruct(const SbvpProblem& problem, const ShootingMesh& mesh,
                         const WienerPath& path, const Vector& s);

std::string to_string(ShootingMode mode);

}  // namespace sbvp
