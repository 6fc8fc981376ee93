#include "sbvp/adaptive_mesh.hpp"

#include "sbvp/integrators.hpp"

#include <algorithm>
#include <cmath>

namespace sbvp {

double MonitorNorm::operator()(const Vector& x) const {
  switch (kind) {
    case Kind::L2:
      return x.norm();
    case Kind::LInf:
      return x.size() == 0 ? 0.0 : x.cwiseAbs().maxCoeff();
    case Kind::Component:
      if (component < 0 || component >= x.size())
        throw ConfigError("monitor component out of range");
      return std::abs(x(component));
  }
  return 0.0;
}

MonitorNorm MonitorNorm::parse(const std::string& text) {
  if (text == "l2") return {Kind::L2, 0};
  if (text == "linf") return {Kind::LInf, 0};
  if (text.rfind("comp:", 0) == 0) {
    try {
      const int k = std::stoi(text.substr(5));
      if (k >= 1) return {Kind::Component, k - 1};
    } catch (const std::exception&) {
    }
  }
  throw ConfigError("unknown monitor norm '" + text + "' (expected l2, linf or comp:K)");
}

std::string MonitorNorm::to_string() const {
  switch (kind) {
    case Kind::L2:
      return "l2";
    case Kind::LInf:
      return "linf";
    case Kind::Component:
      return "comp:" + std::to_string(component + 1);
  }
  return "?";
}

void MonitorSpec::validate() const {
  if (!std::isfinite(alpha) || !std::isfinite(beta) || alpha < 0.0 || beta < 0.0)
    throw ConfigError("monitor coefficients must be finite and non-negative");
  if (alpha <= 0.0 && beta <= 0.0)
    throw ConfigError("at least one of alpha, beta must be positive");
}

ShootingMesh::ShootingMesh(const BaseMesh& base, std::vector<std::vector<std::size_t>> intervals)
    : intervals_(std::move(intervals)) {
  if (intervals_.empty()) throw ShapeError("shooting mesh needs at least one interval");
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    const auto& pts = intervals_[i];
    if (pts.size() < 2) throw ShapeError("each switching interval needs two endpoints");
    for (std::size_t j = 1; j < pts.size(); ++j)
      if (pts[j] <= pts[j - 1]) throw ShapeError("shooting points must be strictly increasing");
    if (pts.back() >= base.size()) throw ShapeError("shooting point outside the base mesh");
    if (i > 0 && pts.front() != intervals_[i - 1].back())
      throw ShapeError("switching intervals must be contiguous");
  }
  switching_.push_back(0);
  nodes_.push_back(intervals_.front().front());
  for (const auto& pts : intervals_) {
    nodes_.insert(nodes_.end(), pts.begin() + 1, pts.end());
    switching_.push_back(nodes_.size() - 1);
  }
}

std::vector<double> ShootingMesh::node_times(const BaseMesh& base) const {
  std::vector<double> out;
  out.reserve(nodes_.size());
  for (auto k : nodes_) out.push_back(base[k]);
  return out;
}

std::vector<std::size_t> select_shooting_points(const SbvpProblem& problem,
                                                const ThetaTrajectory& theta,
                                                const WienerPath& path,
                                                std::size_t interval_index,
                                                const MonitorSpec& monitor) {
  monitor.validate();
  const auto& taus = problem.bc.switching_points;
  if (interval_index + 1 >= taus.size()) throw ConfigError("switching interval index out of range");
  const auto& mesh = path.mesh();
  const std::size_t begin = mesh.index_of(taus[interval_index]);
  const std::size_t end = mesh.index_of(taus[interval_index + 1]);

  const double eps_theta = 1e-12 * (1.0 + theta.max_anchor_norm());
  const bool use_drift = monitor.alpha > 0.0;
  const bool use_diffusion = monitor.beta > 0.0;

  std::vector<std::size_t> points{begin};
  Vector drift_part = theta.at(mesh[begin]);
  Vector diffusion_part = drift_part;
  for (std::size_t k = begin; k < end; ++k) {
    const double t = mesh[k];
    const double h = mesh[k + 1] - t;
    if (use_drift) drift_part = rk3_drift_step(problem.drift, drift_part, t, h);
    if (use_diffusion)
      diffusion_part = srk_diffusion_step(problem.diffusion, diffusion_part, t,
                                          path.increment_between(k, k + 1), h);
    if (k + 1 == end) break;
    const Vector theta_s = theta.at(mesh[k + 1]);
    const double scale = std::max(monitor.norm(theta_s), eps_theta);
    const bool hit = (use_drift && monitor.norm(drift_part) >= monitor.alpha * scale) ||
                     (use_diffusion && monitor.norm(diffusion_part) >= monitor.beta * scale);
    if (hit) {
      points.push_back(k + 1);
      drift_part = theta_s;
      diffusion_part = theta_s;
    }
  }
  points.push_back(end);
  return points;
}

ShootingMesh build_global_mesh(const SbvpProblem& problem, const ThetaTrajectory& theta,
                               const WienerPath& path, const MonitorSpec& monitor) {
  std::vector<std::vector<std::size_t>> intervals;
  for (std::size_t i = 0; i + 1 < problem.bc.switching_points.size(); ++i)
    intervals.push_back(select_shooting_points(problem, theta, path, i, monitor));
  return ShootingMesh(path.mesh(), std::move(intervals));
}

ShootingMesh switching_only_mesh(const SbvpProblem& problem, const BaseMesh& base) {
  return fixed_mesh(problem, base, 0);
}

ShootingMesh fixed_mesh(const SbvpProblem& problem, const BaseMesh& base, std::size_t interior) {
  const auto& taus = problem.bc.switching_points;
  base.require_points(taus);
  std::vector<std::vector<std::size_t>> intervals;
  for (std::size_t i = 0; i + 1 < taus.size(); ++i) {
    const std::size_t a = base.index_of(taus[i]);
    const std::size_t b = base.index_of(taus[i + 1]);
    std::vector<std::size_t> pts{a};
    const std::size_t steps = b - a;
    for (std::size_t q = 1; q <= interior; ++q) {
      const auto k = a + static_cast<std::size_t>(std::llround(
                             static_cast<double>(q) * static_cast<double>(steps) /
                             static_cast<double>(interior + 1)));
      if (k > pts.back() && k < b) pts.push_back(k);
    }
    pts.push_back(b);
    intervals.push_back(std::move(pts));
  }
  return ShootingMesh(base, std::move(intervals));
}

}  // namespace sbvp
