#pragma once

#include "sbvp/shooting.hpp"

#include <span>
#include <utility>
#include <vector>

namespace sbvp {

enum class ErrorNorm {
  FirstComponent,  ///< |X1 - X1_exact|, matching the scalar error tables
  FullVector,      ///< max-norm over all components
};

/// max over mesh points of the pointwise error.
double strong_error(const SolutionPath& numeric, const SolutionPath& oracle,
                    ErrorNorm norm = ErrorNorm::FirstComponent);

struct OrderFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  ///< RMS deviation of log2 E from the fitted line
};

/// Least-squares line through (log2 dtau, log2 E).
OrderFit order_fit(std::span<const std::pair<double, double>> dtau_error);

}  // namespace sbvp
