#include "sbvp/newton.hpp"

#include <doctest.h>

#include <cmath>

using namespace sbvp;

namespace {
Vector scalar(double x) { return Vector::Constant(1, x); }
}  // namespace

TEST_CASE("single full Newton step on s^2 - 4") {
  const ResidualFn f = [](const Vector& s) { return Vector(s.array().square() - 4.0); };
  const JacobianFn j = [](const Vector& s, const Vector&) { return Matrix(Matrix::Constant(1, 1, 2.0 * s(0))); };
  NewtonConfig cfg;
  cfg.max_iter = 1;
  cfg.tol = 1.0;  // 13/6 squared minus 4 = 25/36 < 1
  const auto r = damped_newton(f, j, scalar(3), cfg);
  CHECK(r.iterations == 1);
  CHECK(r.solution(0) == doctest::Approx(13.0 / 6.0).epsilon(1e-15));
  CHECK(r.trace.back().lambda == 1.0);

  cfg.tol = 1e-12;
  cfg.max_iter = 50;
  const auto full = damped_newton(f, j, scalar(3), cfg);
  CHECK(full.solution(0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(full.residual_norm <= 1e-12);
}

TEST_CASE("affine residual converges in one iteration") {
  Matrix m(3, 3);
  m << 4, 1, 0, -1, 3, 2, 0.5, 0, 5;
  Vector b(3);
  b << 1, -2, 3;
  const ResidualFn f = [&](const Vector& s) { return Vector(m * s - b); };
  const JacobianFn j = [&](const Vector& s, const Vector& fs) { return fd_jacobian_dense(f, s, fs, 1e-7); };
  NewtonConfig cfg;
  const auto r = damped_newton(f, j, Vector::Zero(3), cfg);
  CHECK(r.iterations <= 2);  // the finite-difference Jacobian carries round-off of order 1e-9
  CHECK((r.solution - m.partialPivLu().solve(b)).norm() < 1e-12);
  CHECK(r.residual_norm <= cfg.tol);

  const JacobianFn exact = [&](const Vector&, const Vector&) { return m; };
  CHECK(damped_newton(f, exact, Vector::Zero(3), cfg).iterations == 1);
}

TEST_CASE("finite-difference Jacobian") {
  const ResidualFn f = [](const Vector& s) {
    Vector r(2);
    r << s(0) * s(1), std::sin(s(0)) + s(1) * s(1);
    return r;
  };
  Vector s(2);
  s << 0.7, -1.3;
  Matrix exact(2, 2);
  exact << s(1), s(0), std::cos(s(0)), 2 * s(1);
  const Matrix fwd = fd_jacobian_dense(f, s, f(s), 1e-7);
  const Matrix ctr = fd_jacobian_dense(f, s, f(s), 1e-6, true);
  CHECK((fwd - exact).cwiseAbs().maxCoeff() < 1e-6);
  CHECK((ctr - exact).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("damping reduces the step when the full step overshoots") {
  const ResidualFn f = [](const Vector& s) { return Vector(s.array().atan()); };
  const JacobianFn j = [](const Vector& s, const Vector&) {
    return Matrix(Matrix::Constant(1, 1, 1.0 / (1.0 + s(0) * s(0))));
  };
  NewtonConfig cfg;
  const auto r = damped_newton(f, j, scalar(3), cfg);
  CHECK(std::abs(r.solution(0)) < 1e-11);
  CHECK(r.trace[1].lambda < 1.0);
  for (std::size_t k = 1; k < r.trace.size(); ++k) {
    CHECK(r.trace[k].residual_norm < r.trace[k - 1].residual_norm);
    CHECK(r.trace[k].lambda >= cfg.lambda_min);
  }
}

TEST_CASE("errors") {
  const ResidualFn f = [](const Vector& s) { return Vector(s.array().square() + 1.0); };
  const JacobianFn j = [](const Vector& s, const Vector&) { return Matrix(Matrix::Constant(1, 1, 2.0 * s(0))); };
  NewtonConfig cfg;
  cfg.max_iter = 5;
  try {
    damped_newton(f, j, scalar(0.5), cfg);
    FAIL("expected non-convergence");
  } catch (const NonConvergenceError& e) {
    CHECK(e.best_iterate().size() == 1);
    CHECK(e.residual() >= 1.0);
  } catch (const LinearAlgebraError&) {
    // a Newton iterate may land on s = 0 where J is singular
  }

  CHECK_THROWS_AS(damped_newton(f, j, scalar(0.0), cfg), LinearAlgebraError);
  CHECK_THROWS_AS(solve_checked(Matrix::Zero(2, 2), Vector::Ones(2)), LinearAlgebraError);
  Matrix nearly(2, 2);
  nearly << 1, 1, 1, 1 + 1e-16;
  CHECK_THROWS_AS(solve_checked(nearly, Vector::Ones(2)), LinearAlgebraError);

  NewtonConfig bad;
  bad.tol = 0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = NewtonConfig{};
  bad.lambda_min = 0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = NewtonConfig{};
  bad.lambda_min = 1.5;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}
