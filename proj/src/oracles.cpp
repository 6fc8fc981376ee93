#include "sbvp/oracles.hpp"

#include <cmath>

namespace sbvp {

namespace {

SolutionPath make_path(const WienerPath& path, Matrix states, const char* method) {
  SolutionPath out;
  const auto pts = path.mesh().points();
  out.times.assign(pts.begin(), pts.end());
  out.states = std::move(states);
  out.method = method;
  out.realization = path.realization_index();
  return out;
}

}  // namespace

double trapezoid(const BaseMesh& mesh, const Matrix& values, int component) {
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < mesh.size(); ++k) {
    const auto c = static_cast<Eigen::Index>(k);
    sum += 0.5 * (mesh[k + 1] - mesh[k]) * (values(component, c) + values(component, c + 1));
  }
  return sum;
}

SolutionPath exact_tp1(const WienerPath& path) {
  const double mean = trapezoid(path.mesh(), path.values());
  Matrix x = path.values().row(0).array() - mean;
  return make_path(path, std::move(x), "exact");
}

SolutionPath exact_tp2(const WienerPath& path, double c1, double c2) {
  const auto& mesh = path.mesh();
  const std::size_t n = mesh.size();
  const auto& w = path.values();
  // forward[k] = int_0^{t_k} s dW, backward[k] = int_{t_k}^1 (s - 1) dW
  std::vector<double> forward(n, 0.0), backward(n, 0.0);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double dw = w(0, static_cast<Eigen::Index>(k + 1)) - w(0, static_cast<Eigen::Index>(k));
    forward[k + 1] = forward[k] + 0.5 * (mesh[k] + mesh[k + 1]) * dw;
  }
  for (std::size_t k = n - 1; k-- > 0;) {
    const double dw = w(0, static_cast<Eigen::Index>(k + 1)) - w(0, static_cast<Eigen::Index>(k));
    backward[k] = backward[k + 1] + (0.5 * (mesh[k] + mesh[k + 1]) - 1.0) * dw;
  }
  Matrix x(2, static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < n; ++k) {
    const double t = mesh[k];
    const auto c = static_cast<Eigen::Index>(k);
    x(0, c) = c1 * t * (t - 1.0) / 2.0 + c2 * ((t - 1.0) * forward[k] + t * backward[k]);
    x(1, c) = c1 * (t - 0.5) + c2 * (forward[k] + backward[k]);
  }
  return make_path(path, std::move(x), "exact");
}

SolutionPath exact_tp3(const WienerPath& path) {
  if (path.dim() != 2) throw ShapeError("tp3 oracle needs a two-dimensional path");
  const auto& mesh = path.mesh();
  const std::size_t n = mesh.size();
  const auto& w = path.values();
  const auto last = static_cast<Eigen::Index>(n - 1);
  const double w2_end = w(1, last);
  const double decay = std::exp(-w2_end);

  Matrix x(2, static_cast<Eigen::Index>(n));
  double integral = 0.0;  // int_0^t exp(W2 - W1) o dW1, trapezoid in the integrand
  for (std::size_t k = 0; k < n; ++k) {
    const auto c = static_cast<Eigen::Index>(k);
    if (k > 0) {
      const double prev = std::exp(w(1, c - 1) - w(0, c - 1));
      const double curr = std::exp(w(1, c) - w(0, c));
      integral += 0.5 * (prev + curr) * (w(0, c) - w(0, c - 1));
    }
    const double growth = std::exp(w(0, c));
    x(0, c) = growth * (1.0 - decay) + decay * growth * integral;
    x(1, c) = std::exp(w(1, c) - w2_end);
  }
  return make_path(path, std::move(x), "exact");
}

SolutionPath exact_solution(const std::string& problem_id, const WienerPath& path, double c1,
                            double c2, int refine) {
  if (refine > 1) {
    const WienerPath fine = refine_path(path, refine);
    SolutionPath full = exact_solution(problem_id, fine, c1, c2, 1);
    Matrix coarse(full.states.rows(), static_cast<Eigen::Index>(path.mesh().size()));
    for (std::size_t k = 0; k < path.mesh().size(); ++k)
      coarse.col(static_cast<Eigen::Index>(k)) = full.states.col(static_cast<Eigen::Index>(k) * refine);
    return make_path(path, std::move(coarse), "exact");
  }
  if (problem_id == "tp1") return exact_tp1(path);
  if (problem_id == "tp2") return exact_tp2(path, c1, c2);
  if (problem_id == "tp3") return exact_tp3(path);
  throw ConfigError("no exact solution for problem '" + problem_id + "'");
}

double tp2_mean(double t, double c1) { return c1 * t * (t - 1.0) / 2.0; }

double tp2_second_moment(double t, double c1, double c2) {
  const double s = t * (t - 1.0);
  return (3.0 * c1 * c1 + 4.0 * c2 * c2) * s * s / 12.0;
}

}  // namespace sbvp
