#include "sbvp/initial_guess.hpp"

#include "sbvp/integrators.hpp"

#include <doctest.h>

#include <cmath>

using namespace sbvp;

namespace {
WienerPath zero_path(std::size_t intervals, int dim) {
  const auto mesh = BaseMesh::uniform(intervals);
  return WienerPath(mesh, Matrix::Zero(dim, static_cast<Eigen::Index>(mesh.size())));
}
}  // namespace

TEST_CASE("interpolant") {
  Vector a(2), b(2), c(2);
  a << 0, 1;
  b << 2, -1;
  c << 4, 4;
  const ThetaTrajectory theta({0.0, 0.5, 1.0}, {a, b, c});
  CHECK(theta.at(0.0) == a);
  CHECK(theta.at(0.5) == b);
  CHECK(theta.at(1.0) == c);
  CHECK((theta_at(theta, 0.25) - 0.5 * (a + b)).norm() < 1e-15);
  CHECK((theta.at(0.75) - 0.5 * (b + c)).norm() < 1e-15);
  CHECK((theta.at(0.1) - (0.8 * a + 0.2 * b)).norm() < 1e-15);
  CHECK(theta.max_anchor_norm() == doctest::Approx(c.norm()));
  CHECK_THROWS_AS(theta.at(1.5), QueryError);
  CHECK_THROWS_AS(ThetaTrajectory({0.0, 1.0}, {a}), ShapeError);
}

TEST_CASE("tp1 with a zero path gives theta = 0") {
  const auto pts = equispaced_points(7);
  const auto theta = solve_coarse_em(make_tp1(pts), zero_path(24, 1));
  for (const auto& anchor : theta.anchors()) CHECK(std::abs(anchor(0)) < 1e-14);
}

TEST_CASE("tp2 with a zero path") {
  const double c1 = 1.5;
  const auto theta = solve_coarse_em(make_tp2(c1, 1.0), zero_path(8, 1));
  REQUIRE(theta.anchors().size() == 2);
  CHECK(theta.anchors()[0].norm() < 1e-12);
  // forward substitution: theta_2 = theta_1 + f(theta_1)
  CHECK(std::abs(theta.anchors()[1](0)) < 1e-12);
  CHECK(theta.anchors()[1](1) == doctest::Approx(c1));
  CHECK(theta.boundary_residual() <= 1e-10);
}

TEST_CASE("tp3 with a zero path gives [0, 1]") {
  const auto theta = solve_coarse_em(make_tp3(), zero_path(8, 2));
  Vector expect(2);
  expect << 0, 1;
  CHECK((theta.anchors()[0] - expect).norm() < 1e-12);
  CHECK((theta.anchors()[1] - expect).norm() < 1e-12);
}

TEST_CASE("recursion and boundary rows on a random path") {
  const auto mesh = BaseMesh::uniform(60);
  const auto pts = equispaced_points(7);
  const auto problem = make_tp1(pts);
  const auto path = generate_path(3, 4, mesh, 1);
  const auto theta = solve_coarse_em(problem, path);
  const auto& anchors = theta.anchors();
  for (std::size_t j = 0; j + 1 < pts.size(); ++j) {
    const Vector next = em_step(problem, anchors[j], pts[j], pts[j + 1] - pts[j], path.increment(pts[j], pts[j + 1]));
    CHECK((anchors[j + 1] - next).norm() < 1e-15);
  }
  CHECK(boundary_residual(problem.bc, anchors).norm() <= 1e-10);


  const auto tp2 = make_tp2();
  const auto theta2 = solve_coarse_em(tp2, path);
  CHECK(boundary_residual(tp2.bc, theta2.anchors()).norm() <= 1e-10);
}

TEST_CASE("switching points must lie on the base mesh") {
  const auto problem = make_tp1(equispaced_points(4));
  CHECK_THROWS_AS(solve_coarse_em(problem, zero_path(10, 1)), MeshError);
}

TEST_CASE("inconsistent boundary condition raises an initial-guess error") {
  SbvpProblem p = make_tp2();
  Matrix zero = Matrix::Zero(2, 2);
  p.bc.matrices = {zero, zero};
  p.bc.rhs = Vector::Ones(2);
  try {
    solve_coarse_em(p, zero_path(4, 1));
    FAIL("expected InitialGuessError");
  } catch (const InitialGuessError& e) {
    CHECK(e.residual() == doctest::Approx(std::sqrt(2.0)));
  }
}
