#include "sbvp/problems.hpp"

#include <string>

namespace sbvp {

void MultiPointBC::validate() const {
  if (switching_points.size() < 2) throw ConfigError("need at least two switching points");
  if (matrices.size() != switching_points.size())
    throw ConfigError("one boundary matrix per switching point is required");
  for (std::size_t j = 1; j < switching_points.size(); ++j)
    if (!(switching_points[j] > switching_points[j - 1]))
      throw ConfigError("switching points must be strictly increasing");
  for (const auto& a : matrices)
    if (a.rows() != rhs.size() || a.cols() != rhs.size())
      throw ConfigError("boundary matrices must be d x d");
}

void SbvpProblem::validate() const {
  if (dim < 1 || noise_dim < 1) throw ConfigError("dimensions must be positive");
  if (!drift || !diffusion) throw ConfigError("drift and diffusion must be set");
  bc.validate();
  if (bc.dim() != dim) throw ConfigError("boundary condition dimension mismatch");
  if (bc.switching_points.front() != 0.0 || bc.switching_points.back() != horizon)
    throw ConfigError("first/last switching points must be 0 and T");
}

Vector boundary_residual(const MultiPointBC& bc, std::span<const Vector> states) {
  if (states.size() != bc.matrices.size())
    throw ShapeError("expected " + std::to_string(bc.matrices.size()) + " boundary states, got " +
                     std::to_string(states.size()));
  Vector r = -bc.rhs;
  for (std::size_t j = 0; j < states.size(); ++j) {
    if (states[j].size() != bc.rhs.size()) throw ShapeError("boundary state has wrong dimension");
    r.noalias() += bc.matrices[j] * states[j];
  }
  return r;
}

MultiPointBC discretize_functional_bc(const FunctionalBC& fbc,
                                      std::span<const double> switching_points) {
  if (switching_points.size() < 2)
    throw ConfigError("functional boundary condition needs at least two switching points");
  MultiPointBC bc;
  bc.switching_points.assign(switching_points.begin(), switching_points.end());
  bc.rhs = fbc.rhs;
  const std::size_t n = switching_points.size();
  bc.matrices.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    double w = 0.0;
    if (j > 0) w += 0.5 * (switching_points[j] - switching_points[j - 1]);
    if (j + 1 < n) w += 0.5 * (switching_points[j + 1] - switching_points[j]);
    bc.matrices.push_back(w * fbc.integrand_matrix(switching_points[j]));
  }
  return bc;
}

std::vector<double> equispaced_points(std::size_t count, double horizon) {
  if (count < 2) throw ConfigError("need at least two points");
  std::vector<double> pts(count);
  for (std::size_t j = 0; j + 1 < count; ++j)
    pts[j] = horizon * static_cast<double>(j) / static_cast<double>(count - 1);
  pts[count - 1] = horizon;
  return pts;
}

SbvpProblem make_tp1(std::span<const double> switching_points) {
  SbvpProblem p;
  p.name = "tp1";
  p.dim = 1;
  p.noise_dim = 1;
  p.horizon = 1.0;
  p.drift = [](const Vector&, double) { return Vector::Zero(1).eval(); };
  p.diffusion = [](const Vector&, double) { return Matrix::Ones(1, 1).eval(); };
  FunctionalBC fbc{[](double) { return Matrix::Identity(1, 1).eval(); }, Vector::Zero(1)};
  p.bc = discretize_functional_bc(fbc, switching_points);
  p.validate();
  return p;
}

SbvpProblem make_tp2(double c1, double c2) {
  SbvpProblem p;
  p.name = "tp2";
  p.dim = 2;
  p.noise_dim = 1;
  p.horizon = 1.0;
  p.drift = [c1](const Vector& x, double) {
    Vector f(2);
    f << x(1), c1;
    return f;
  };
  p.diffusion = [c2](const Vector&, double) {
    Matrix g(2, 1);
    g << 0.0, c2;
    return g;
  };
  Matrix h0(2, 2), h1(2, 2);
  h0 << 1, 0, 0, 0;
  h1 << 0, 0, 1, 0;
  p.bc = MultiPointBC{{0.0, 1.0}, {h0, h1}, Vector::Zero(2)};
  p.validate();
  return p;
}

SbvpProblem make_tp3() {
  SbvpProblem p;
  p.name = "tp3";
  p.dim = 2;
  p.noise_dim = 2;
  p.horizon = 1.0;
  p.drift = [](const Vector&, double) { return Vector::Zero(2).eval(); };
  // Column k is B_k X with B1 = [[1,1],[0,0]], B2 = [[0,0],[0,1]].
  p.diffusion = [](const Vector& x, double) {
    Matrix g(2, 2);
    g << x(0) + x(1), 0.0,
         0.0,         x(1);
    return g;
  };
  Matrix h0(2, 2), h1(2, 2);
  h0 << 1, 1, 0, 0;
  h1 << 0, 0, 0, 1;
  Vector c(2);
  c << 1, 1;
  p.bc = MultiPointBC{{0.0, 1.0}, {h0, h1}, c};
  p.validate();
  return p;
}

SbvpProblem make_problem(const std::string& id, std::span<const double> switching_points,
                         double c1, double c2) {
  if (id == "tp1") return make_tp1(switching_points);
  if (id == "tp2") return make_tp2(c1, c2);
  if (id == "tp3") return make_tp3();
  throw ConfigError("unknown problem id '" + id + "'");
}

}  // namespace sbvp
