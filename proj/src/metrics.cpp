#include "sbvp/metrics.hpp"

#include <cmath>

namespace sbvp {

double strong_error(const SolutionPath& numeric, const SolutionPath& oracle, ErrorNorm norm) {
  if (numeric.states.cols() != oracle.states.cols())
    throw ShapeError("numeric and oracle paths have different lengths");
  if (norm == ErrorNorm::FirstComponent)
    return (numeric.states.row(0) - oracle.states.row(0)).cwiseAbs().maxCoeff();
  if (numeric.states.rows() != oracle.states.rows())
    throw ShapeError("numeric and oracle paths have different dimensions");
  return (numeric.states - oracle.states).cwiseAbs().maxCoeff();
}

OrderFit order_fit(std::span<const std::pair<double, double>> dtau_error) {
  if (dtau_error.size() < 2) throw ConfigError("order fit needs at least two points");
  const auto n = static_cast<double>(dtau_error.size());
  double sx = 0, sy = 0;
  for (auto [dt, e] : dtau_error) {
    if (!(dt > 0.0) || !(e > 0.0)) throw ConfigError("order fit needs positive data");
    sx += std::log2(dt);
    sy += std::log2(e);
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (auto [dt, e] : dtau_error) {
    const double x = std::log2(dt) - mx;
    sxx += x * x;
    sxy += x * (std::log2(e) - my);
  }
  if (sxx == 0.0) throw ConfigError("order fit needs distinct step sizes");
  OrderFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0;
  for (auto [dt, e] : dtau_error) {
    const double r = std::log2(e) - (fit.intercept + fit.slope * std::log2(dt));
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

}  // namespace sbvp
