#include "sbvp/shooting.hpp"

#include "sbvp/initial_guess.hpp"
#include "sbvp/integrators.hpp"

#include <cmath>

namespace sbvp {

ShootingVector::ShootingVector(Vector values, int dim) : values_(std::move(values)), dim_(dim) {
  if (dim_ < 1 || values_.size() % dim_ != 0)
    throw ShapeError("shooting vector length must be a multiple of d");
}

ShootingVector ShootingVector::zeros(std::size_t nodes, int dim) {
  return ShootingVector(Vector::Zero(static_cast<Eigen::Index>(nodes) * dim), dim);
}

std::size_t shooting_dimension(const ShootingMesh& mesh, int dim) {
  return mesh.node_count() * static_cast<std::size_t>(dim);
}

namespace {

void check_shape(const SbvpProblem& problem, const ShootingMesh& mesh, const Vector& s) {
  if (static_cast<std::size_t>(s.size()) != shooting_dimension(mesh, problem.dim))
    throw ShapeError("shooting vector has length " + std::to_string(s.size()) + ", expected " +
                     std::to_string(shooting_dimension(mesh, problem.dim)));
  if (mesh.switching_positions().size() != problem.bc.count())
    throw ShapeError("shooting mesh does not match the boundary condition");
}

}  // namespace

Vector assemble_residual(const SbvpProblem& problem, const ShootingMesh& mesh,
                         const WienerPath& path, const Vector& s) {
  check_shape(problem, mesh, s);
  const int d = problem.dim;
  const ShootingVector sv(s, d);
  const auto& nodes = mesh.nodes();
  Vector f(s.size());
  for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
    const Vector end = advance(Stepper::FullSrk, problem, sv.node(k), path, nodes[k], nodes[k + 1]);
    f.segment(sv.offset(k), d) = sv.node(k + 1) - end;
  }
  Vector boundary = -problem.bc.rhs;
  const auto& sw = mesh.switching_positions();
  for (std::size_t j = 0; j < sw.size(); ++j) boundary.noalias() += problem.bc.matrices[j] * sv.node(sw[j]);
  f.tail(d) = boundary;
  return f;
}

Matrix fd_jacobian(const SbvpProblem& problem, const ShootingMesh& mesh, const WienerPath& path,
                   const Vector& s, double fd_epsilon, bool central) {
  check_shape(problem, mesh, s);
  if (!(fd_epsilon > 0.0)) throw ConfigError("fd_epsilon must be positive");
  const int d = problem.dim;
  const ShootingVector sv(s, d);
  const auto& nodes = mesh.nodes();
  const Eigen::Index size = s.size();
  Matrix jac = Matrix::Zero(size, size);

  for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
    const Eigen::Index row = sv.offset(k);
    jac.block(row, sv.offset(k + 1), d, d).setIdentity();
    const Vector base = sv.node(k);
    const Vector end = central ? Vector() : advance(Stepper::FullSrk, problem, base, path, nodes[k], nodes[k + 1]);
    for (int c = 0; c < d; ++c) {
      const double eps = fd_epsilon * (1.0 + std::abs(base(c)));
      Vector probe = base;
      probe(c) += eps;
      const Vector plus = advance(Stepper::FullSrk, problem, probe, path, nodes[k], nodes[k + 1]);
      Vector column;
      if (central) {
        probe(c) = base(c) - eps;
        const Vector minus = advance(Stepper::FullSrk, problem, probe, path, nodes[k], nodes[k + 1]);
        column = (plus - minus) / (2.0 * eps);
      } else {
        column = (plus - end) / eps;
      }
      jac.block(row, sv.offset(k) + c, d, 1) = -column;
    }
  }
  const Eigen::Index last = size - d;
  const auto& sw = mesh.switching_positions();
  for (std::size_t j = 0; j < sw.size(); ++j) jac.block(last, sv.offset(sw[j]), d, d) = problem.bc.matrices[j];
  return jac;
}

NewtonResult solve_shooting_system(const SbvpProblem& problem, const ShootingMesh& mesh,
                                   const WienerPath& path, const Vector& s0,
                                   const NewtonConfig& cfg) {
  const ResidualFn residual = [&](const Vector& s) { return assemble_residual(problem, mesh, path, s); };
  const JacobianFn jacobian = [&](const Vector& s, const Vector&) {
    return fd_jacobian(problem, mesh, path, s, cfg.fd_epsilon, cfg.fd_central);
  };
  return damped_newton(residual, jacobian, s0, cfg);
}

SolutionPath reconstruct(const SbvpProblem& problem, const ShootingMesh& mesh,
                         const WienerPath& path, const Vector& s) {
  check_shape(problem, mesh, s);
  const int d = problem.dim;
  const ShootingVector sv(s, d);
  const auto& base = path.mesh();
  const auto& nodes = mesh.nodes();
  SolutionPath out;
  out.times.assign(base.points().begin(), base.points().end());
  out.states = Matrix::Zero(d, static_cast<Eigen::Index>(base.size()));
  out.shooting_nodes = nodes;
  out.realization = path.realization_index();
  for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
    Vector x = sv.node(k);
    out.states.col(static_cast<Eigen::Index>(nodes[k])) = x;
    for (std::size_t q = nodes[k]; q < nodes[k + 1]; ++q) {
      x = step(Stepper::FullSrk, problem, x, path, q);
      out.states.col(static_cast<Eigen::Index>(q + 1)) = x;
    }
  }
  return out;
}

SolveResult solve(const SbvpProblem& problem, const WienerPath& path, const SolveOptions& options) {
  problem.validate();
  if (path.dim() != problem.noise_dim) throw ShapeError("path dimension does not match noise count");
  const ThetaTrajectory theta = solve_coarse_em(problem, path);

  ShootingMesh mesh;
  switch (options.mode) {
    case ShootingMode::Adaptive:
      mesh = build_global_mesh(problem, theta, path, options.monitor);
      break;
    case ShootingMode::Fixed:
      mesh = fixed_mesh(problem, path.mesh(), options.fixed_interior);
      break;
    case ShootingMode::Simple:
      mesh = switching_only_mesh(problem, path.mesh());
      break;
  }

  const int d = problem.dim;
  ShootingVector s0 = ShootingVector::zeros(mesh.node_count(), d);
  const auto& base = path.mesh();
  for (std::size_t k = 0; k < mesh.node_count(); ++k) s0.node(k) = theta.at(base[mesh.nodes()[k]]);

  NewtonResult newton = solve_shooting_system(problem, mesh, path, s0.values(), options.newton);
  SolutionPath sol = reconstruct(problem, mesh, path, newton.solution);
  sol.method = to_string(options.mode);
  return SolveResult{std::move(sol), std::move(mesh), std::move(newton)};
}

std::string to_string(ShootingMode mode) {
  switch (mode) {
    case ShootingMode::Adaptive:
      return "adaptive-msm";
    case ShootingMode::Fixed:
      return "fixed-msm";
    case ShootingMode::Simple:
      return "simple-shooting";
  }
  return "?";
}

}  // namespace sbvp
