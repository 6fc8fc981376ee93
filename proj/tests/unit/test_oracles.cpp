#include "sbvp/oracles.hpp"

#include "sbvp/metrics.hpp"
#include "sbvp/problems.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace sbvp;

namespace {

WienerPath linear_path(std::size_t intervals) {
  const auto mesh = BaseMesh::uniform(intervals);
  Matrix w(1, static_cast<Eigen::Index>(mesh.size()));
  for (std::size_t k = 0; k < mesh.size(); ++k) w(0, static_cast<Eigen::Index>(k)) = mesh[k];
  return WienerPath(mesh, w);
}

std::vector<Vector> states_at(const SolutionPath& x, const MultiPointBC& bc) {
  std::vector<Vector> out;
  for (double tau : bc.switching_points) {
    for (std::size_t k = 0; k < x.times.size(); ++k)
      if (x.times[k] == tau) out.push_back(x.at_index(k));
  }
  return out;
}

}  // namespace

TEST_CASE("tp1 oracle on a linear pseudo-path") {
  const auto x = exact_tp1(linear_path(10));
  for (std::size_t k = 0; k < x.size(); ++k) CHECK(x.states(0, static_cast<Eigen::Index>(k)) == doctest::Approx(x.times[k] - 0.5).epsilon(1e-14));
  CHECK(trapezoid(BaseMesh::uniform(10), x.states) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("oracles satisfy their boundary conditions") {
  const auto mesh = BaseMesh::uniform(96);
  for (std::uint64_t r = 0; r < 10; ++r) {
    const auto p1 = generate_path(4, r, mesh, 1);
    const auto x1 = exact_tp1(p1);
    CHECK(std::abs(trapezoid(mesh, x1.states)) < 1e-14);

    const auto x2 = exact_tp2(p1, 1.3, 0.6);
    const auto tp2 = make_tp2(1.3, 0.6);
    CHECK(boundary_residual(tp2.bc, states_at(x2, tp2.bc)).norm() < 1e-14);

    const auto p3 = generate_path(4, r, mesh, 2);
    const auto x3 = exact_tp3(p3);
    const auto tp3 = make_tp3();
    CHECK(boundary_residual(tp3.bc, states_at(x3, tp3.bc)).norm() < 1e-13);
  }
}

TEST_CASE("tp3 oracle on the zero path") {
  const auto mesh = BaseMesh::uniform(8);
  const WienerPath zero(mesh, Matrix::Zero(2, 9));
  const auto x = exact_tp3(zero);
  CHECK(x.states.row(0).isZero(1e-15));
  CHECK((x.states.row(1).array() == 1.0).all());
  CHECK_THROWS_AS(exact_tp3(generate_path(1, 0, mesh, 1)), ShapeError);
}

TEST_CASE("refined oracle keeps the coarse samples close") {
  const auto mesh = BaseMesh::uniform(64);
  const auto path = generate_path(12, 0, mesh, 1);
  const auto coarse = exact_solution("tp2", path);
  const auto fine = exact_solution("tp2", path, 1.0, 1.0, 8);
  CHECK(fine.states.cols() == coarse.states.cols());
  CHECK(std::abs(fine.states(0, 0)) < 1e-14);
  CHECK((fine.states - coarse.states).cwiseAbs().maxCoeff() < 0.1);
  CHECK_THROWS_AS(exact_solution("tp4", path), ConfigError);
}

TEST_CASE("tp2 moments") {
  CHECK(tp2_mean(0.0, 1.0) == 0.0);
  CHECK(tp2_second_moment(0.0, 1.0, 1.0) == 0.0);
  CHECK(tp2_mean(0.2, 1.0) == doctest::Approx(-0.08));
  CHECK(tp2_second_moment(0.2, 1.0, 1.0) == doctest::Approx(0.0149333).epsilon(1e-5));

  const auto mesh = BaseMesh::uniform(50);
  const std::size_t m = 4000;
  const auto k = static_cast<Eigen::Index>(mesh.index_of(0.2));
  double sum = 0, sum2 = 0;
  for (std::uint64_t r = 0; r < m; ++r) {
    const double x = exact_tp2(generate_path(99, r, mesh, 1)).states(0, k);
    sum += x;
    sum2 += x * x;
  }
  const double mean = sum / m;
  const double var = sum2 / m - mean * mean;
  CHECK(std::abs(mean - tp2_mean(0.2, 1.0)) <= 4.0 * std::sqrt(var / m));
}

TEST_CASE("strong error") {
  const auto path = generate_path(3, 0, BaseMesh::uniform(16), 1);
  const auto x = exact_tp2(path);
  CHECK(strong_error(x, x) == 0.0);
  auto shifted = x;
  shifted.states.row(0).array() += 0.25;
  CHECK(strong_error(shifted, x) == doctest::Approx(0.25));
  shifted.states.row(1).array() -= 0.75;
  CHECK(strong_error(shifted, x) == doctest::Approx(0.25));
  CHECK(strong_error(shifted, x, ErrorNorm::FullVector) == doctest::Approx(0.75));
}

TEST_CASE("order fit") {
  std::vector<std::pair<double, double>> linear, quadratic;
  for (int k = 3; k <= 8; ++k) {
    const double h = std::ldexp(1.0, -k);
    linear.emplace_back(h, 3.0 * h);
    quadratic.emplace_back(h, 0.5 * h * h);
  }
  const auto a = order_fit(linear);
  CHECK(a.slope == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(a.intercept == doctest::Approx(std::log2(3.0)).epsilon(1e-12));
  CHECK(a.residual < 1e-12);
  CHECK(order_fit(quadratic).slope == doctest::Approx(2.0).epsilon(1e-12));

  const std::vector<std::pair<double, double>> one{{0.5, 1.0}};
  CHECK_THROWS_AS(order_fit(one), ConfigError);
  const std::vector<std::pair<double, double>> zero{{0.5, 1.0}, {0.25, 0.0}};
  CHECK_THROWS_AS(order_fit(zero), ConfigError);
}
