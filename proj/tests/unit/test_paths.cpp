#include "sbvp/paths.hpp"

#include <doctest.h>

#include <cmath>

using namespace sbvp;

TEST_CASE("mesh validation") {
  CHECK_THROWS_AS(BaseMesh({0.0, 0.5, 0.5}), MeshError);
  CHECK_THROWS_AS(BaseMesh({0.0, 0.7, 0.3}), MeshError);
  CHECK_THROWS_AS(BaseMesh({0.1, 0.5}), MeshError);
  CHECK_THROWS_AS(BaseMesh(std::vector<double>{}), MeshError);
  const auto m = BaseMesh::uniform(4);
  CHECK(m.size() == 5);
  CHECK(m[4] == 1.0);
  CHECK(m.index_of(0.25) == 1);
  CHECK_THROWS_AS(m.index_of(0.3), QueryError);
}

TEST_CASE("generated path starts at zero and is deterministic") {
  const BaseMesh mesh({0.0, 1.0});
  const auto p = generate_path(42, 0, mesh, 1);
  CHECK(p.value_at(0.0)(0) == 0.0);

  const auto fine = BaseMesh::uniform(16);
  const auto a = generate_path(7, 3, fine, 2);
  const auto b = generate_path(7, 3, fine, 2);
  CHECK(a.values() == b.values());
  const auto c = generate_path(7, 4, fine, 2);
  CHECK(a.values() != c.values());
  CHECK(a.value_at(0.5).size() == 2);
  CHECK_THROWS_AS(generate_path(1, 0, fine, 0), ShapeError);
}

TEST_CASE("increment queries") {
  const auto mesh = BaseMesh::uniform(8);
  const auto p = generate_path(11, 0, mesh, 2);
  CHECK(p.increment(0.25, 0.25).isZero(0.0));
  CHECK(p.increment(0.0, 1.0) == p.values().col(8));
  CHECK(p.value_at(1.0) == p.increment(0.0, 1.0));
  const Eigen::Vector2d split = p.increment(0.125, 0.5) + p.increment(0.5, 0.875);
  CHECK((split - p.increment(0.125, 0.875)).norm() < 1e-15);
  CHECK_THROWS_AS(p.increment(0.1, 0.5), QueryError);
  CHECK_THROWS_AS(p.value_at(0.3), QueryError);
  CHECK_THROWS_AS(p.increment(0.5, 0.25), QueryError);
}

TEST_CASE("ensemble statistics of increments") {
  // h = 0.25; M = 10^4 paths; per-step variance within 5%, mean within 3 sqrt(h/M),
  // adjacent-step correlation and cross-component correlation below 0.05.
  const auto mesh = BaseMesh::uniform(4);
  constexpr int m = 10000;
  const double h = 0.25;
  Eigen::MatrixXd inc1(m, 4), inc2(m, 4);
  for (int k = 0; k < m; ++k) {
    const auto p = generate_path(2024, static_cast<std::uint64_t>(k), mesh, 2);
    for (int s = 0; s < 4; ++s) {
      inc1(k, s) = p.values()(0, s + 1) - p.values()(0, s);
      inc2(k, s) = p.values()(1, s + 1) - p.values()(1, s);
    }
  }
  for (int s = 0; s < 4; ++s) {
    const double mean = inc1.col(s).mean();
    const double var = (inc1.col(s).array() - mean).square().sum() / (m - 1);
    CHECK(var >= 0.2375);
    CHECK(var <= 0.2625);
    CHECK(std::abs(mean) < 3.0 * std::sqrt(h / m));
  }
  auto corr = [](const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    const Eigen::ArrayXd a = x.array() - x.mean(), b = y.array() - y.mean();
    return (a * b).sum() / std::sqrt(a.square().sum() * b.square().sum());
  };
  CHECK(std::abs(corr(inc1.col(0), inc1.col(1))) < 0.05);
  CHECK(std::abs(corr(inc1.col(2), inc1.col(3))) < 0.05);
  CHECK(std::abs(corr(inc1.col(1), inc2.col(1))) < 0.05);
}

TEST_CASE("bridge refinement keeps coarse values and has bridge variance") {
  const auto mesh = BaseMesh::uniform(4);
  const auto p = generate_path(5, 1, mesh, 1);
  const auto fine = refine_path(p, 4);
  CHECK(fine.mesh().size() == 17);
  for (int k = 0; k <= 4; ++k) CHECK(fine.values()(0, 4 * k) == p.values()(0, k));

  // Midpoint of a bridge over h = 0.25 has conditional variance h/4.
  constexpr int m = 4000;
  double ss = 0.0;
  for (int k = 0; k < m; ++k) {
    const auto q = generate_path(99, static_cast<std::uint64_t>(k), mesh, 1);
    const auto r = refine_path(q, 2);
    const double dev = r.values()(0, 1) - 0.5 * q.values()(0, 1);
    ss += dev * dev;
  }
  CHECK(ss / m == doctest::Approx(0.0625).epsilon(0.08));
}
