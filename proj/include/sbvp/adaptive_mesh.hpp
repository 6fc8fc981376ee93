#pragma once

#include "sbvp/core.hpp"
#include "sbvp/initial_guess.hpp"
#include "sbvp/paths.hpp"
#include "sbvp/problems.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace sbvp {

/// Norm used on both sides of the stop-loss test.
struct MonitorNorm {
  enum class Kind { L2, LInf, Component };
  Kind kind = Kind::LInf;
  int component = 0;  ///< zero-based, used when kind == Component

  double operator()(const Vector& x) const;

  /// "l2", "linf", or "comp:K" with K one-based.
  static MonitorNorm parse(const std::string& text);
  std::string to_string() const;
};

/// Stop-loss thresholds L1 = alpha ||theta||, L2 = beta ||theta||.
/// A non-positive coefficient disables its criterion.
struct MonitorSpec {
  double alpha = 0.0;
  double beta = 0.0;
  MonitorNorm norm;

  /// Throws ConfigError for negative or non-finite coefficients or when both are zero.
  void validate() const;
};

/// Realization-dependent shooting points, stored as base-mesh indices per switching interval.
class ShootingMesh {
public:
  ShootingMesh() = default;
  ShootingMesh(const BaseMesh& base, std::vector<std::vector<std::size_t>> intervals);

  std::size_t interval_count() const noexcept { return intervals_.size(); }
  const std::vector<std::size_t>& interval(std::size_t i) const { return intervals_[i]; }
  /// N(i): number of points on interval i including both switching points.
  std::size_t count(std::size_t i) const { return intervals_[i].size(); }

  /// Every distinct shooting node in order (switching points included).
  const std::vector<std::size_t>& nodes() const noexcept { return nodes_; }
  /// Position within nodes() of switching point j.
  const std::vector<std::size_t>& switching_positions() const noexcept { return switching_; }
  std::size_t node_count() const noexcept { return nodes_.size(); }

  /// Node times on the base mesh.
  std::vector<double> node_times(const BaseMesh& base) const;

private:
  std::vector<std::vector<std::size_t>> intervals_;
  std::vector<std::size_t> nodes_;
  std::vector<std::size_t> switching_;
};

/// Shooting points (base-mesh indices) for switching interval `interval_index`:
/// drift-only and diffusion-only solutions restarted from theta at each selected point;
/// the first base point s > t_{i,j} with ||X_drift(s)|| >= alpha ||theta(s)|| or
/// ||X_diff(s)|| >= beta ||theta(s)|| becomes t_{i,j+1}. tau_{i+1} is always appended.
std::vector<std::size_t> select_shooting_points(const SbvpProblem& problem,
                                                const ThetaTrajectory& theta,
                                                const WienerPath& path,
                                                std::size_t interval_index,
                                                const MonitorSpec& monitor);

ShootingMesh build_global_mesh(const SbvpProblem& problem, const ThetaTrajectory& theta,
                               const WienerPath& path, const MonitorSpec& monitor);

/// Switching points only.
ShootingMesh switching_only_mesh(const SbvpProblem& problem, const BaseMesh& base);

/// `interior` equispaced base-mesh nodes inside every switching interval (fewer if the
/// interval has too few base points).
ShootingMesh fixed_mesh(const SbvpProblem& problem, const BaseMesh& base, std::size_t interior);

}  // namespace sbvp
