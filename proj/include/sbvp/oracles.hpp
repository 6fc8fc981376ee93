#pragma once

#include "sbvp/paths.hpp"
#include "sbvp/shooting.hpp"

#include <string>

namespace sbvp {

// Closed-form solutions of the built-in problems. Time and stochastic integrals are
// trapezoidal sums on the path's own mesh.

/// X(t) = W(t) - int_0^1 W ds
SolutionPath exact_tp1(const WienerPath& path);

/// X1 = c1 t(t-1)/2 + c2 [(t-1) int_0^t s dW + t int_t^1 (s-1) dW],
/// X2 = c1 (t - 1/2) + c2 [int_0^t s dW + int_t^1 (s-1) dW].
SolutionPath exact_tp2(const WienerPath& path, double c1 = 1.0, double c2 = 1.0);

/// X2 = exp(W2(t) - W2(1)),
/// X1 = exp(W1(t)) (1 - exp(-W2(1))) + exp(-W2(1)) exp(W1(t)) int_0^t exp(W2 - W1) o dW1.
SolutionPath exact_tp3(const WienerPath& path);

/// Dispatch by problem id. With refine > 1 the oracle is evaluated on a Brownian-bridge
/// refinement of the path and sampled back at the original mesh points.
SolutionPath exact_solution(const std::string& problem_id, const WienerPath& path, double c1 = 1.0,
                            double c2 = 1.0, int refine = 1);

/// Composite trapezoid of row `component` of `values` over the mesh.
double trapezoid(const BaseMesh& mesh, const Matrix& values, int component = 0);

/// Exact first two moments of X1 for tp2.
double tp2_mean(double t, double c1);
double tp2_second_moment(double t, double c1, double c2);

}  // namespace sbvp
