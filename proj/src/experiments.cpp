#include "sbvp/experiments.hpp"

#include "sbvp/fdm.hpp"
#include "sbvp/oracles.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

namespace sbvp {

Method parse_method(const std::string& text) {
  if (text == "adaptive-msm") return Method::AdaptiveMsm;
  if (text == "fixed-msm") return Method::FixedMsm;
  if (text == "simple-shooting") return Method::SimpleShooting;
  if (text == "fd") return Method::Fd;
  throw ConfigError("unknown method '" + text + "'");
}

std::string to_string(Method method) {
  switch (method) {
    case Method::AdaptiveMsm:
      return "adaptive-msm";
    case Method::FixedMsm:
      return "fixed-msm";
    case Method::SimpleShooting:
      return "simple-shooting";
    case Method::Fd:
      return "fd";
  }
  return "?";
}

void ExperimentConfig::validate() const {
  if (problem != "tp1" && problem != "tp2" && problem != "tp3")
    throw ConfigError("unknown problem id '" + problem + "'");
  if (realizations < 1) throw ConfigError("need at least one realization");
  if (jobs < 1) throw ConfigError("jobs must be >= 1");
  if (oracle_refine < 1) throw ConfigError("oracle refinement must be >= 1");
  if (method == Method::Fd && problem == "tp3")
    throw ConfigError("the finite-difference method does not support tp3");
  newton.validate();
  if (method == Method::AdaptiveMsm) monitor().validate();
}

MonitorSpec ExperimentConfig::monitor() const {
  MonitorSpec spec;
  if (problem == "tp1") {
    spec = {0.0, 2.5, MonitorNorm{MonitorNorm::Kind::LInf, 0}};
  } else if (problem == "tp2") {
    spec = {2.0, 1.5, MonitorNorm{MonitorNorm::Kind::LInf, 0}};
  } else {
    spec = {1.5, 2.0, MonitorNorm{MonitorNorm::Kind::Component, 1}};
  }
  if (alpha) spec.alpha = *alpha;
  if (beta) spec.beta = *beta;
  if (monitor_norm) spec.norm = MonitorNorm::parse(*monitor_norm);
  return spec;
}

double Discretization::dtau() const {
  const double horizon = mesh.horizon();
  if (switching_points.size() > 2) return horizon / static_cast<double>(switching_points.size() - 1);
  return horizon / static_cast<double>(mesh.size() - 1);
}

Discretization make_discretization(const ExperimentConfig& cfg) {
  std::size_t ns = 0, nm = 0;
  if (cfg.problem == "tp1") {
    ns = cfg.switching.value_or(7);
    if (ns < 2) throw ConfigError("need at least two switching points");
    if (cfg.midpoints) {
      nm = *cfg.midpoints;
    } else if (cfg.base_n) {
      if (*cfg.base_n < 2 || (*cfg.base_n - 1) % (ns - 1) != 0)
        throw ConfigError("base-n - 1 must be a multiple of switching - 1");
      nm = (*cfg.base_n - 1) / (ns - 1);
    } else {
      nm = 4;
    }
  } else {
    ns = 2;
    if (cfg.switching && *cfg.switching != 2)
      throw ConfigError(cfg.problem + " is a two-point problem (switching must be 2)");
    const std::size_t n = cfg.base_n.value_or(cfg.midpoints ? *cfg.midpoints + 1 : 32);
    if (n < 2) throw ConfigError("base-n must be >= 2");
    nm = n - 1;
  }
  if (nm < 1) throw ConfigError("midpoints must be >= 1");
  if (cfg.midpoints && *cfg.midpoints != nm) throw ConfigError("midpoints inconsistent with base-n");
  const std::size_t n = (ns - 1) * nm + 1;
  if (cfg.base_n && *cfg.base_n != n)
    throw ConfigError("base-n must equal (switching - 1) * midpoints + 1 = " + std::to_string(n));

  Discretization disc{BaseMesh::uniform(n - 1), {}, nm};
  for (std::size_t j = 0; j < ns; ++j) disc.switching_points.push_back(disc.mesh[j * nm]);
  return disc;
}

SolutionPath solve_realization(const ExperimentConfig& cfg, const Discretization& disc,
                               const SbvpProblem& problem, const WienerPath& path,
                               std::size_t* nodes, NewtonResult* newton) {
  if (cfg.method == Method::Fd) {
    const LinearOperatorSpec spec = cfg.problem == "tp1" ? fd_spec_tp1(disc.switching_points)
                                                         : fd_spec_tp2(cfg.c1, cfg.c2);
    if (nodes) *nodes = 0;
    return solve_fd(spec, disc.mesh, path);
  }
  SolveOptions opts;
  opts.newton = cfg.newton;
  switch (cfg.method) {
    case Method::AdaptiveMsm:
      opts.mode = ShootingMode::Adaptive;
      opts.monitor = cfg.monitor();
      break;
    case Method::FixedMsm:
      opts.mode = ShootingMode::Fixed;
      opts.fixed_interior = cfg.fixed_interior;
      break;
    default:
      opts.mode = ShootingMode::Simple;
      break;
  }
  SolveResult result = solve(problem, path, opts);
  if (nodes) *nodes = result.mesh.node_count();
  if (newton) *newton = std::move(result.newton);
  return std::move(result.path);
}

RealizationResult run_realization(const ExperimentConfig& cfg, const Discretization& disc,
                                  const SbvpProblem& problem, std::uint64_t index) {
  const WienerPath path = generate_path(cfg.seed, index, disc.mesh, problem.noise_dim);
  RealizationResult r;
  r.numeric = solve_realization(cfg, disc, problem, path, &r.shooting_nodes, &r.newton);
  r.newton_iterations = r.newton.iterations;
  r.oracle = exact_solution(cfg.problem, path, cfg.c1, cfg.c2, cfg.oracle_refine);
  r.error = strong_error(r.numeric, r.oracle, cfg.error_norm);
  return r;
}

void for_each_realization(std::size_t count, unsigned jobs,
                          const std::function<void(std::size_t)>& fn) {
  std::atomic<std::size_t> next{0};
  std::mutex mutex;
  std::size_t failed_index = count;
  std::string failure;
  auto worker = [&] {
    for (std::size_t k = next++; k < count; k = next++) {
      try {
        fn(k);
      } catch (const std::exception& e) {
        std::lock_guard lock(mutex);
        if (k < failed_index) {
          failed_index = k;
          failure = e.what();
        }
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  if (failed_index < count) throw RealizationError(failed_index, failure);
}

ErrorReport run(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  const Discretization disc = make_discretization(cfg);
  const SbvpProblem problem = make_problem(cfg.problem, disc.switching_points, cfg.c1, cfg.c2);

  ErrorReport report;
  report.errors.assign(cfg.realizations, 0.0);
  report.nodes.assign(cfg.realizations, 0);
  for_each_realization(cfg.realizations, cfg.jobs, [&](std::size_t k) {
    const RealizationResult r = run_realization(cfg, disc, problem, k);
    report.errors[k] = r.error;
    report.nodes[k] = r.shooting_nodes;
  });
  double sum = 0.0, nodes = 0.0;
  for (std::size_t k = 0; k < cfg.realizations; ++k) {
    sum += report.errors[k];
    nodes += static_cast<double>(report.nodes[k]);
  }
  const auto m = static_cast<double>(cfg.realizations);
  report.e_inf = sum / m;
  report.na_mean = nodes / m;
  report.base_n = disc.mesh.size();
  report.switching = disc.switching_points.size();
  report.dtau = disc.dtau();
  report.wall_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::vector<SweepPoint> default_sweep(const std::string& problem) {
  if (problem == "tp1")
    return {{std::nullopt, 7, 4}, {std::nullopt, 10, 6}, {std::nullopt, 15, 8},
            {std::nullopt, 22, 12}, {std::nullopt, 32, 16}};
  std::vector<SweepPoint> out;
  for (std::size_t n = 32; n <= 512; n *= 2) out.push_back({n, std::nullopt, std::nullopt});
  return out;
}

std::vector<SweepRow> sweep(const ExperimentConfig& cfg, std::span<const SweepPoint> points) {
  std::vector<SweepRow> rows;
  for (const auto& p : points) {
    ExperimentConfig c = cfg;
    c.base_n = p.base_n;
    c.switching = p.switching;
    c.midpoints = p.midpoints;
    const ErrorReport r = run(c);
    rows.push_back({r.dtau, r.e_inf, r.na_mean, r.base_n, r.switching});
  }
  return rows;
}

std::vector<MomentRow> weak_moments(const ExperimentConfig& cfg, std::span<const double> times) {
  if (cfg.problem != "tp2") throw ConfigError("weak moments are only tabulated for tp2");
  cfg.validate();
  const Discretization disc = make_discretization(cfg);
  const SbvpProblem problem = make_problem(cfg.problem, disc.switching_points, cfg.c1, cfg.c2);
  std::vector<std::size_t> idx;
  for (double t : times) idx.push_back(disc.mesh.index_of(t));

  const std::size_t m = cfg.realizations;
  Matrix samples(static_cast<Eigen::Index>(idx.size()), static_cast<Eigen::Index>(m));
  for_each_realization(m, cfg.jobs, [&](std::size_t k) {
    const WienerPath path = generate_path(cfg.seed, k, disc.mesh, problem.noise_dim);
    const SolutionPath sol = solve_realization(cfg, disc, problem, path);
    for (std::size_t q = 0; q < idx.size(); ++q)
      samples(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(k)) =
          sol.states(0, static_cast<Eigen::Index>(idx[q]));
  });

  std::vector<MomentRow> rows;
  const auto md = static_cast<double>(m);
  for (std::size_t q = 0; q < idx.size(); ++q) {
    const Eigen::ArrayXd x = samples.row(static_cast<Eigen::Index>(q)).transpose().array();
    const Eigen::ArrayXd x2 = x.square();
    MomentRow row;
    row.t = times[q];
    row.mean = x.mean();
    row.second = x2.mean();
    if (m > 1) {
      row.mean_stderr = std::sqrt((x - row.mean).square().sum() / (md - 1.0) / md);
      row.second_stderr = std::sqrt((x2 - row.second).square().sum() / (md - 1.0) / md);
    }
    row.mean_exact = tp2_mean(row.t, cfg.c1);
    row.second_exact = tp2_second_moment(row.t, cfg.c1, cfg.c2);
    rows.push_back(row);
  }
  return rows;
}

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_run_csv(std::ostream& out, const ExperimentConfig& cfg, const ErrorReport& report) {
  out << "problem,method,N,Ns,Na_mean,M,seed,E_inf,wall_s\n";
  out << cfg.problem << ',' << to_string(cfg.method) << ',' << report.base_n << ','
      << report.switching << ',' << format_double(report.na_mean) << ',' << cfg.realizations << ','
      << cfg.seed << ',' << format_double(report.e_inf) << ','
      << format_double(cfg.timing ? report.wall_s : 0.0) << '\n';
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
  out << "dtau,E_inf,log2_dtau,log2_E\n";
  for (const auto& r : rows)
    out << format_double(r.dtau) << ',' << format_double(r.e_inf) << ','
        << format_double(std::log2(r.dtau)) << ',' << format_double(std::log2(r.e_inf)) << '\n';
}

void write_moments_csv(std::ostream& out, std::span<const MomentRow> rows) {
  out << "t,mean,mean_exact,second,second_exact\n";
  for (const auto& r : rows)
    out << format_double(r.t) << ',' << format_double(r.mean) << ','
        << format_double(r.mean_exact) << ',' << format_double(r.second) << ','
        << format_double(r.second_exact) << '\n';
}

}  // namespace sbvp
