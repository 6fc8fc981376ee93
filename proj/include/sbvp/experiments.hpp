#pragma once

#include "sbvp/adaptive_mesh.hpp"
#include "sbvp/metrics.hpp"
#include "sbvp/newton.hpp"
#include "sbvp/paths.hpp"
#include "sbvp/problems.hpp"
#include "sbvp/shooting.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sbvp {

enum class Method { AdaptiveMsm, FixedMsm, SimpleShooting, Fd };

Method parse_method(const std::string& text);
std::string to_string(Method method);

struct ExperimentConfig {
  std::string problem = "tp1";
  Method method = Method::AdaptiveMsm;
  std::optional<std::size_t> base_n;
  std::optional<std::size_t> switching;
  std::optional<std::size_t> midpoints;
  std::size_t realizations = 100;
  std::uint64_t seed = 42;
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<std::string> monitor_norm;
  double c1 = 1.0;
  double c2 = 1.0;
  std::size_t fixed_interior = 0;  ///< interior shooting nodes per switching interval (fixed-msm)
  int oracle_refine = 1;
  ErrorNorm error_norm = ErrorNorm::FirstComponent;
  unsigned jobs = 1;
  bool timing = false;  ///< write measured wall time into the CSV instead of 0
  NewtonConfig newton;
  std::string out;

  void validate() const;
  /// Problem preset (tp1: alpha 0, beta 2.5, linf; tp2: 2, 1.5, linf; tp3: 1.5, 2, comp:2)
  /// with any explicit alpha/beta/norm applied on top.
  MonitorSpec monitor() const;
};

/// Base mesh of (N_s - 1) N_m + 1 equispaced points with the switching points on it.
struct Discretization {
  BaseMesh mesh;
  std::vector<double> switching_points;
  std::size_t midpoints = 0;

  /// Switching spacing for multi-point problems, base step for two-point problems.
  double dtau() const;
};

Discretization make_discretization(const ExperimentConfig& cfg);

/// Solver failure tagged with the realization that caused it.
class RealizationError : public Error {
public:
  RealizationError(std::uint64_t index, const std::string& what)
      : Error("realization " + std::to_string(index) + ": " + what), index_(index) {}
  std::uint64_t index() const noexcept { return index_; }

private:
  std::uint64_t index_;
};

struct RealizationResult {
  SolutionPath numeric;
  SolutionPath oracle;
  double error = 0.0;
  std::size_t shooting_nodes = 0;  ///< 0 for the finite-difference method
  int newton_iterations = 0;
  NewtonResult newton;
};

/// Runs the configured method on one realization and evaluates the oracle.
RealizationResult run_realization(const ExperimentConfig& cfg, const Discretization& disc,
                                  const SbvpProblem& problem, std::uint64_t index);

/// Numeric solution only (no oracle).
SolutionPath solve_realization(const ExperimentConfig& cfg, const Discretization& disc,
                               const SbvpProblem& problem, const WienerPath& path,
                               std::size_t* nodes = nullptr, NewtonResult* newton = nullptr);

struct ErrorReport {
  std::vector<double> errors;  ///< E(omega_k) in realization order
  std::vector<std::size_t> nodes;
  double e_inf = 0.0;
  double na_mean = 0.0;
  double wall_s = 0.0;
  std::size_t base_n = 0;
  std::size_t switching = 0;
  double dtau = 0.0;
};

/// Calls fn(k) for k in [0, count) on `jobs` threads. Rethrows the failure with the
/// lowest realization index as RealizationError.
void for_each_realization(std::size_t count, unsigned jobs,
                          const std::function<void(std::size_t)>& fn);

ErrorReport run(const ExperimentConfig& cfg);

struct SweepPoint {
  std::optional<std::size_t> base_n;
  std::optional<std::size_t> switching;
  std::optional<std::size_t> midpoints;
};

struct SweepRow {
  double dtau = 0.0;
  double e_inf = 0.0;
  double na_mean = 0.0;
  std::size_t base_n = 0;
  std::size_t switching = 0;
};

/// tp1: the (N_s, N_m) rows (7,4) (10,6) (15,8) (22,12) (32,16); otherwise N = 2^5 .. 2^9.
std::vector<SweepPoint> default_sweep(const std::string& problem);

std::vector<SweepRow> sweep(const ExperimentConfig& cfg, std::span<const SweepPoint> points);

struct MomentRow {
  double t = 0.0;
  double mean = 0.0;
  double mean_exact = 0.0;
  double mean_stderr = 0.0;
  double second = 0.0;
  double second_exact = 0.0;
  double second_stderr = 0.0;
};

/// E X1(t) and E X1(t)^2 of the numeric tp2 solution over cfg.realizations paths.
/// Every t must be a base-mesh point.
std::vector<MomentRow> weak_moments(const ExperimentConfig& cfg, std::span<const double> times);

/// "%.17g"
std::string format_double(double value);

void write_run_csv(std::ostream& out, const ExperimentConfig& cfg, const ErrorReport& report);
void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);
void write_moments_csv(std::ostream& out, std::span<const MomentRow> rows);

}  // namespace sbvp
