// sbvp: ensemble experiments for stochastic multi-point boundary value problems.
//
//   sbvp run     --problem tp1 --method adaptive-msm --switching 7 --midpoints 4 ...
//   sbvp sweep   --problem tp1 --method adaptive-msm ...      (order-fit data)
//   sbvp moments --problem tp2 --times 0,0.2,0.4,0.6,0.8,1    (weak moments)

#include "sbvp/config.hpp"
#include "sbvp/experiments.hpp"
#include "sbvp/metrics.hpp"
#include "sbvp/oracles.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

struct Flags {
  std::string config;
  std::string problem = "tp1";
  std::string method = "adaptive-msm";
  std::size_t base_n = 0, switching = 0, midpoints = 0, realizations = 100, shooting_points = 0;
  std::uint64_t seed = 42;
  double alpha = 0, beta = 0, c1 = 1, c2 = 1;
  std::string monitor_norm = "linf";
  unsigned jobs = 1;
  std::string out;
  int oracle_refine = 1;
  bool full_norm = false, fd_central = false, timing = false;
  double newton_tol = 1e-11, fd_epsilon = 1e-7;
  int max_iter = 50;
  std::string trace;

  std::vector<std::pair<CLI::Option*, std::function<void(sbvp::ExperimentConfig&)>>> setters;

  template <typename T, typename Apply>
  void add(CLI::App* app, const std::string& name, T& target, const std::string& help, Apply apply) {
    CLI::Option* opt = app->add_option(name, target, help);
    setters.emplace_back(opt, [&target, apply](sbvp::ExperimentConfig& c) { apply(c, target); });
  }
  template <typename Apply>
  void flag(CLI::App* app, const std::string& name, bool& target, const std::string& help, Apply apply) {
    CLI::Option* opt = app->add_flag(name, target, help);
    setters.emplace_back(opt, [&target, apply](sbvp::ExperimentConfig& c) { apply(c, target); });
  }

  void attach(CLI::App* app) {
    app->add_option("--config", config, "JSON file mirroring these flags; flags override it");
    add(app, "--problem", problem, "tp1 | tp2 | tp3", [](auto& c, auto& v) { c.problem = v; });
    add(app, "--method", method, "adaptive-msm | fixed-msm | simple-shooting | fd",
        [](auto& c, auto& v) { c.method = sbvp::parse_method(v); });
    add(app, "--base-n", base_n, "base mesh size N", [](auto& c, auto& v) { c.base_n = v; });
    add(app, "--switching", switching, "number of switching points N_s",
        [](auto& c, auto& v) { c.switching = v; });
    add(app, "--midpoints", midpoints, "base steps per switching interval N_m",
        [](auto& c, auto& v) { c.midpoints = v; });
    add(app, "--realizations", realizations, "number of Wiener paths M",
        [](auto& c, auto& v) { c.realizations = v; });
    add(app, "--seed", seed, "master seed", [](auto& c, auto& v) { c.seed = v; });
    add(app, "--alpha", alpha, "drift stop-loss coefficient (<= 0 disables)",
        [](auto& c, auto& v) { c.alpha = v; });
    add(app, "--beta", beta, "diffusion stop-loss coefficient (<= 0 disables)",
        [](auto& c, auto& v) { c.beta = v; });
    add(app, "--monitor-norm", monitor_norm, "linf | l2 | comp:K",
        [](auto& c, auto& v) { c.monitor_norm = v; });
    add(app, "--jobs", jobs, "worker threads", [](auto& c, auto& v) { c.jobs = v; });
    add(app, "--out", out, "CSV output path (stdout if omitted)", [](auto& c, auto& v) { c.out = v; });
    add(app, "--c1", c1, "tp2 drift constant", [](auto& c, auto& v) { c.c1 = v; });
    add(app, "--c2", c2, "tp2 noise constant", [](auto& c, auto& v) { c.c2 = v; });
    add(app, "--shooting-points", shooting_points, "interior nodes per switching interval (fixed-msm)",
        [](auto& c, auto& v) { c.fixed_interior = v; });
    add(app, "--oracle-refine", oracle_refine, "evaluate oracles on a k-times refined Brownian bridge",
        [](auto& c, auto& v) { c.oracle_refine = v; });
    add(app, "--newton-tol", newton_tol, "Newton residual tolerance",
        [](auto& c, auto& v) { c.newton.tol = v; });
    add(app, "--max-iter", max_iter, "Newton iteration limit", [](auto& c, auto& v) { c.newton.max_iter = v; });
    add(app, "--fd-epsilon", fd_epsilon, "relative finite-difference step",
        [](auto& c, auto& v) { c.newton.fd_epsilon = v; });
    flag(app, "--fd-central", fd_central, "central-difference Jacobian",
         [](auto& c, auto& v) { c.newton.fd_central = v; });
    flag(app, "--full-norm", full_norm, "error over all solution components",
         [](auto& c, auto& v) { c.error_norm = v ? sbvp::ErrorNorm::FullVector : sbvp::ErrorNorm::FirstComponent; });
    flag(app, "--timing", timing, "record measured wall time in the CSV",
         [](auto& c, auto& v) { c.timing = v; });
  }

  sbvp::ExperimentConfig build() const {
    sbvp::ExperimentConfig cfg;
    if (!config.empty()) sbvp::apply_json_file(cfg, config);
    for (const auto& [opt, apply] : setters)
      if (opt->count() > 0) apply(cfg);
    return cfg;
  }
};

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw sbvp::ConfigError("cannot write '" + path + "'");
  out << text;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}

void write_trace(const std::string& path, const sbvp::ExperimentConfig& cfg) {
  const auto disc = sbvp::make_discretization(cfg);
  const auto problem = sbvp::make_problem(cfg.problem, disc.switching_points, cfg.c1, cfg.c2);
  const auto r = sbvp::run_realization(cfg, disc, problem, 0);
  std::ostringstream csv;
  csv << "iteration,residual_norm,lambda\n";
  for (const auto& e : r.newton.trace)
    csv << e.iteration << ',' << sbvp::format_double(e.residual_norm) << ','
        << sbvp::format_double(e.lambda) << '\n';
  emit(path, csv.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive multiple shooting for stochastic multi-point BVPs"};
  app.require_subcommand(1);

  Flags run_flags, sweep_flags, moment_flags;
  auto* run_cmd = app.add_subcommand("run", "solve an ensemble and report E_inf");
  run_flags.attach(run_cmd);
  run_cmd->add_option("--trace", run_flags.trace, "write the Newton trace of realization 0 as CSV");

  auto* sweep_cmd = app.add_subcommand("sweep", "E_inf over a mesh sweep with an order fit");
  sweep_flags.attach(sweep_cmd);
  std::string sweep_ns;
  sweep_cmd->add_option("--base-ns", sweep_ns, "comma-separated base mesh sizes (two-point problems)");

  auto* moments_cmd = app.add_subcommand("moments", "weak moments of X1 for tp2");
  moment_flags.attach(moments_cmd);
  std::string times = "0,0.2,0.4,0.6,0.8,1";
  moments_cmd->add_option("--times", times, "comma-separated mesh times");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      const auto cfg = run_flags.build();
      const auto report = sbvp::run(cfg);
      std::ostringstream csv;
      sbvp::write_run_csv(csv, cfg, report);
      emit(cfg.out, csv.str());
      std::cerr << "E_inf = " << report.e_inf << "  Na = " << report.na_mean
                << "  wall = " << report.wall_s << " s\n";
      if (!run_flags.trace.empty()) write_trace(run_flags.trace, cfg);
    } else if (sweep_cmd->parsed()) {
      auto cfg = sweep_flags.build();
      std::vector<sbvp::SweepPoint> points = sbvp::default_sweep(cfg.problem);
      if (!sweep_ns.empty()) {
        points.clear();
        for (double n : parse_list(sweep_ns))
          points.push_back({static_cast<std::size_t>(n), std::nullopt, std::nullopt});
      }
      const auto rows = sbvp::sweep(cfg, points);
      std::ostringstream csv;
      sbvp::write_sweep_csv(csv, rows);
      emit(cfg.out, csv.str());
      std::vector<std::pair<double, double>> data;
      for (const auto& r : rows) data.emplace_back(r.dtau, r.e_inf);
      const auto fit = sbvp::order_fit(data);
      std::cerr << "slope q = " << fit.slope << "  residual r = " << fit.residual << '\n';
    } else {
      auto cfg = moment_flags.build();
      if (moments_cmd->count("--problem") == 0 && moment_flags.config.empty()) cfg.problem = "tp2";
      if (moments_cmd->count("--base-n") == 0 && !cfg.base_n) cfg.base_n = 101;
      const auto t = parse_list(times);
      const auto rows = sbvp::weak_moments(cfg, t);
      std::ostringstream csv;
      sbvp::write_moments_csv(csv, rows);
      emit(cfg.out, csv.str());
    }
  } catch (const sbvp::RealizationError& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return 3;
  } catch (const sbvp::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
