#include "sbvp/fdm.hpp"

#include "sbvp/newton.hpp"

#include <Eigen/SparseLU>

#include <cmath>
#include <string>

namespace sbvp {

void LinearOperatorSpec::validate() const {
  if (order < 1) throw ConfigError("operator order must be >= 1");
  if (static_cast<int>(coefficients.size()) != order)
    throw ConfigError("need exactly n coefficient functions a_0..a_{n-1}");
  if (switching_points.size() < 1) throw ConfigError("need at least one switching point");
  if (boundary.rows() != order || boundary.cols() != static_cast<Eigen::Index>(switching_points.size()))
    throw ConfigError("boundary coefficients must be n x N_s");
  if (rhs.size() != order) throw ConfigError("boundary rhs must have n entries");
}

CompanionSystem to_first_order(const LinearOperatorSpec& spec) {
  spec.validate();
  CompanionSystem sys;
  const int n = spec.order;
  sys.order = n;
  auto coeffs = spec.coefficients;
  sys.matrix = [n, coeffs](double t) {
    Matrix a = Matrix::Zero(n, n);
    for (int c = 0; c < n; ++c) a(0, c) = coeffs[static_cast<std::size_t>(n - 1 - c)](t);
    for (int r = 1; r < n; ++r) a(r, r - 1) = -1.0;
    return a;
  };
  for (Eigen::Index j = 0; j < spec.boundary.cols(); ++j) {
    Matrix phi = Matrix::Zero(n, n);
    phi.col(n - 1) = spec.boundary.col(j);
    sys.phi.push_back(std::move(phi));
  }
  return sys;
}

FdSystem assemble_system(const LinearOperatorSpec& spec, const BaseMesh& mesh,
                         const WienerPath& path) {
  const CompanionSystem sys = to_first_order(spec);
  mesh.require_points(spec.switching_points);
  if (path.mesh().size() != mesh.size()) throw ShapeError("path and FD mesh differ");
  if (mesh.size() < 2) throw MeshError("FD mesh needs at least two points");
  const int n = spec.order;
  const std::size_t steps = mesh.size() - 1;
  const auto size = static_cast<Eigen::Index>(mesh.size()) * n;

  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(steps * static_cast<std::size_t>(n * (n + 1)) + spec.switching_points.size() * n);
  Vector w = Vector::Zero(size);
  for (std::size_t j = 0; j < steps; ++j) {
    const double h = mesh[j + 1] - mesh[j];
    const Matrix block = h * sys.matrix(mesh[j]) - Matrix::Identity(n, n);
    const auto row = static_cast<Eigen::Index>(j) * n;
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c)
        if (block(r, c) != 0.0) entries.emplace_back(row + r, row + c, block(r, c));
      entries.emplace_back(row + r, row + n + r, 1.0);
    }
    const double dw = path.values()(0, static_cast<Eigen::Index>(j + 1)) -
                      path.values()(0, static_cast<Eigen::Index>(j));
    w(row) = spec.forcing * h + spec.noise_scale * dw;
  }
  const auto last = static_cast<Eigen::Index>(steps) * n;
  for (std::size_t j = 0; j < sys.phi.size(); ++j) {
    const auto col = static_cast<Eigen::Index>(mesh.index_of(spec.switching_points[j])) * n;
    for (int r = 0; r < n; ++r) {
      const double v = sys.phi[j](r, n - 1);
      if (v != 0.0) entries.emplace_back(last + r, col + n - 1, v);
    }
  }
  w.tail(n) = spec.rhs;

  FdSystem out;
  out.lambda.resize(size, size);
  out.lambda.setFromTriplets(entries.begin(), entries.end());
  out.w = std::move(w);
  out.order = n;
  out.mesh_size = mesh.size();
  return out;
}

Matrix solve_fd_system(const FdSystem& system, std::size_t dense_limit) {
  Vector y;
  if (static_cast<std::size_t>(system.lambda.rows()) <= dense_limit) {
    y = solve_checked(system.dense(), system.w);
  } else {
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.analyzePattern(system.lambda);
    lu.factorize(system.lambda);
    if (lu.info() != Eigen::Success)
      throw LinearAlgebraError("finite-difference system is singular: " + lu.lastErrorMessage());
    y = lu.solve(system.w);
  }
  return Eigen::Map<const Matrix>(y.data(), system.order, static_cast<Eigen::Index>(system.mesh_size));
}

SolutionPath solve_fd(const LinearOperatorSpec& spec, const BaseMesh& mesh, const WienerPath& path,
                      Matrix* derivatives) {
  const FdSystem system = assemble_system(spec, mesh, path);
  const Matrix y = solve_fd_system(system);
  SolutionPath out;
  out.times.assign(mesh.points().begin(), mesh.points().end());
  out.states = y.row(spec.order - 1);
  out.method = "fd";
  out.realization = path.realization_index();
  if (derivatives) *derivatives = y;
  return out;
}

LinearOperatorSpec fd_spec_tp1(std::span<const double> switching_points) {
  LinearOperatorSpec spec;
  spec.order = 1;
  spec.coefficients = {[](double) { return 0.0; }};
  spec.switching_points.assign(switching_points.begin(), switching_points.end());
  const std::size_t ns = switching_points.size();
  spec.boundary = Matrix::Zero(1, static_cast<Eigen::Index>(ns));
  for (std::size_t j = 0; j < ns; ++j) {
    double w = 0.0;
    if (j > 0) w += 0.5 * (switching_points[j] - switching_points[j - 1]);
    if (j + 1 < ns) w += 0.5 * (switching_points[j + 1] - switching_points[j]);
    spec.boundary(0, static_cast<Eigen::Index>(j)) = w;
  }
  spec.rhs = Vector::Zero(1);
  return spec;
}

LinearOperatorSpec fd_spec_tp2(double c1, double c2) {
  LinearOperatorSpec spec;
  spec.order = 2;
  spec.coefficients = {[](double) { return 0.0; }, [](double) { return 0.0; }};
  spec.switching_points = {0.0, 1.0};
  spec.boundary = Matrix::Identity(2, 2);  // X(0) = 0 and X(1) = 0
  spec.rhs = Vector::Zero(2);
  spec.forcing = c1;
  spec.noise_scale = c2;
  return spec;
}

}  // namespace sbvp
