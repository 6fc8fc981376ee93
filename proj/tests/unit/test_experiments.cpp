#include "sbvp/config.hpp"
#include "sbvp/experiments.hpp"

#include <doctest.h>

#include <atomic>
#include <sstream>
#include <stdexcept>

using namespace sbvp;

TEST_CASE("methods") {
  for (auto m : {Method::AdaptiveMsm, Method::FixedMsm, Method::SimpleShooting, Method::Fd})
    CHECK(parse_method(to_string(m)) == m);
  CHECK(to_string(Method::AdaptiveMsm) == "adaptive-msm");
  CHECK_THROWS_AS(parse_method("bvp4c"), ConfigError);
}

TEST_CASE("discretization") {
  ExperimentConfig cfg;
  auto d = make_discretization(cfg);
  CHECK(d.mesh.size() == 25);
  CHECK(d.switching_points.size() == 7);
  CHECK(d.dtau() == doctest::Approx(1.0 / 6.0));

  cfg.switching = 15;
  cfg.midpoints = 8;
  d = make_discretization(cfg);
  CHECK(d.mesh.size() == 113);
  d.mesh.require_points(d.switching_points);

  cfg.base_n = 113;
  CHECK_NOTHROW(make_discretization(cfg));
  cfg.base_n = 128;
  CHECK_THROWS_AS(make_discretization(cfg), ConfigError);

  ExperimentConfig two;
  two.problem = "tp2";
  d = make_discretization(two);
  CHECK(d.mesh.size() == 32);
  CHECK(d.switching_points == std::vector<double>{0.0, 1.0});
  CHECK(d.dtau() == doctest::Approx(1.0 / 31.0));
  two.switching = 5;
  CHECK_THROWS_AS(make_discretization(two), ConfigError);
}

TEST_CASE("validation and presets") {
  ExperimentConfig cfg;
  cfg.realizations = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = ExperimentConfig{};
  cfg.problem = "tp7";
  CHECK_THROWS_AS(cfg.validate(), ConfigError);

  cfg = ExperimentConfig{};
  auto m = cfg.monitor();
  CHECK(m.alpha == 0.0);
  CHECK(m.beta == 2.5);
  CHECK(m.norm.to_string() == "linf");
  cfg.problem = "tp2";
  m = cfg.monitor();
  CHECK(m.alpha == 2.0);
  CHECK(m.beta == 1.5);
  cfg.problem = "tp3";
  m = cfg.monitor();
  CHECK(m.alpha == 1.5);
  CHECK(m.beta == 2.0);
  CHECK(m.norm.to_string() == "comp:2");
  cfg.beta = 3.0;
  cfg.monitor_norm = "l2";
  m = cfg.monitor();
  CHECK(m.beta == 3.0);
  CHECK(m.norm.to_string() == "l2");
}

TEST_CASE("parallel realizations") {
  std::vector<int> seen(50, 0);
  for_each_realization(50, 4, [&](std::size_t k) { seen[k] += 1; });
  for (int s : seen) CHECK(s == 1);

  try {
    for_each_realization(20, 3, [](std::size_t k) {
      if (k == 7 || k == 13) throw std::runtime_error("boom");
    });
    FAIL("expected RealizationError");
  } catch (const RealizationError& e) {
    CHECK(e.index() == 7);
  }
}

TEST_CASE("runs are reproducible and independent of thread count") {
  ExperimentConfig cfg;
  cfg.realizations = 12;
  cfg.jobs = 1;
  const auto a = run(cfg);
  cfg.jobs = 4;
  const auto b = run(cfg);
  CHECK(a.errors == b.errors);
  CHECK(a.nodes == b.nodes);
  double sum = 0;
  for (double e : a.errors) {
    CHECK(e >= 0.0);
    sum += e;
  }
  CHECK(a.e_inf == doctest::Approx(sum / 12.0).epsilon(1e-15));

  std::ostringstream x, y;
  write_run_csv(x, cfg, a);
  write_run_csv(y, cfg, b);
  CHECK(x.str() == y.str());
  CHECK(x.str().rfind("problem,method,N,Ns,Na_mean,M,seed,E_inf,wall_s\ntp1,adaptive-msm,25,7,", 0) == 0);

  cfg.seed = 43;
  CHECK(run(cfg).errors != a.errors);
}

TEST_CASE("methods agree on the same realization") {
  ExperimentConfig cfg;
  cfg.problem = "tp2";
  cfg.base_n = 33;
  const auto disc = make_discretization(cfg);
  const auto problem = make_problem(cfg.problem, disc.switching_points);
  for (auto m : {Method::AdaptiveMsm, Method::FixedMsm, Method::SimpleShooting}) {
    cfg.method = m;
    CHECK(run_realization(cfg, disc, problem, 0).error < 1e-10);
  }
  cfg.method = Method::Fd;
  const auto fd = run_realization(cfg, disc, problem, 0);
  CHECK(fd.error > 1e-6);
  CHECK(fd.shooting_nodes == 0);

  ExperimentConfig tp3;
  tp3.problem = "tp3";
  tp3.method = Method::Fd;
  CHECK_THROWS_AS(tp3.validate(), ConfigError);
}

TEST_CASE("sweep and moments csv") {
  const std::vector<SweepRow> rows{{0.5, 0.25, 3.0, 3, 2}, {0.25, 0.125, 5.0, 5, 2}};
  std::ostringstream s;
  write_sweep_csv(s, rows);
  CHECK(s.str() == "dtau,E_inf,log2_dtau,log2_E\n0.5,0.25,-1,-2\n0.25,0.125,-2,-3\n");

  CHECK(default_sweep("tp1").size() == 5);
  CHECK(default_sweep("tp3").front().base_n == 32u);
  CHECK(default_sweep("tp3").back().base_n == 512u);

  ExperimentConfig cfg;
  cfg.problem = "tp2";
  cfg.base_n = 11;
  cfg.realizations = 200;
  const std::vector<double> times{0.0, 0.2, 1.0};
  const auto moments = weak_moments(cfg, times);
  REQUIRE(moments.size() == 3);
  CHECK(moments[0].mean == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(moments[1].mean_exact == doctest::Approx(-0.08));
  const std::vector<double> off{0.15};
  CHECK_THROWS_AS(weak_moments(cfg, off), Error);

  CHECK(format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("json config") {
  ExperimentConfig cfg;
  apply_json(cfg, nlohmann::json::parse(R"({"problem": "tp3", "base-n": 64, "realizations": 5,
      "seed": 7, "alpha": 1.0, "monitor-norm": "l2", "method": "fixed-msm", "shooting-points": 3})"));
  CHECK(cfg.problem == "tp3");
  CHECK(cfg.base_n == 64u);
  CHECK(cfg.realizations == 5u);
  CHECK(cfg.seed == 7u);
  CHECK(cfg.alpha == 1.0);
  CHECK(cfg.monitor_norm == "l2");
  CHECK(cfg.method == Method::FixedMsm);
  CHECK(cfg.fixed_interior == 3u);
  CHECK_THROWS_AS(apply_json(cfg, nlohmann::json::parse(R"({"bogus": 1})")), ConfigError);
  CHECK_THROWS_AS(apply_json(cfg, nlohmann::json::parse(R"({"seed": "x"})")), ConfigError);
  CHECK_THROWS_AS(apply_json_file(cfg, "/nonexistent/config.json"), ConfigError);
}
