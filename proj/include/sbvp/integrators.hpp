#pragma once

#include "sbvp/core.hpp"
#include "sbvp/paths.hpp"
#include "sbvp/problems.hpp"

#include <cstddef>
#include <vector>

namespace sbvp {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Stochastic Runge-Kutta tableau: drift weights A, diffusion weights B,
/// drift quadrature alpha, diffusion quadrature gamma.
template <typename Scalar>
struct ButcherTableau {
  MatrixX<Scalar> a;
  MatrixX<Scalar> b;
  VectorX<Scalar> alpha;
  VectorX<Scalar> gamma;

  int stages() const noexcept { return static_cast<int>(alpha.size()); }

  /// Strictly lower-triangular A and B.
  bool is_explicit() const {
    for (int i = 0; i < stages(); ++i)
      for (int j = i; j < stages(); ++j)
        if (a(i, j) != Scalar(0) || b(i, j) != Scalar(0)) return false;
    return true;
  }

  bool is_consistent(Scalar tol = Scalar(0)) const {
    using std::abs;
    return abs(alpha.sum() - Scalar(1)) <= tol && abs(gamma.sum() - Scalar(1)) <= tol;
  }

  /// Three-stage, strong order one scheme; its drift part is Heun's third-order RK.
  static ButcherTableau r3() {
    ButcherTableau t;
    t.a = MatrixX<Scalar>::Zero(3, 3);
    t.a(1, 0) = Scalar(1) / Scalar(2);
    t.a(2, 1) = Scalar(3) / Scalar(4);
    t.b = t.a;
    t.alpha.resize(3);
    t.alpha << Scalar(2) / Scalar(9), Scalar(3) / Scalar(9), Scalar(4) / Scalar(9);
    t.gamma = t.alpha;
    return t;
  }
};

namespace detail {

/// Explicit SRK step. With several noises each stage adds sum_j b_ij G(eta_j) dW,
/// i.e. the single-noise scheme applied column-wise with shared stages.
template <bool WithDrift, bool WithDiffusion, typename Scalar, typename Drift, typename Diffusion>
VectorX<Scalar> srk_step(const Drift& f, const Diffusion& g, const ButcherTableau<Scalar>& tab,
                         const VectorX<Scalar>& x, Scalar t, Scalar h,
                         const VectorX<Scalar>& dw) {
  if (!tab.is_explicit())
    throw UnsupportedTableauError("only explicit (strictly lower-triangular) tableaus are supported");
  const int s = tab.stages();
  std::vector<VectorX<Scalar>> fs(static_cast<std::size_t>(s));
  std::vector<VectorX<Scalar>> gs(static_cast<std::size_t>(s));
  VectorX<Scalar> next = x;
  for (int i = 0; i < s; ++i) {
    VectorX<Scalar> eta = x;
    Scalar c_i(0);
    for (int j = 0; j < i; ++j) {
      const auto uj = static_cast<std::size_t>(j);
      if constexpr (WithDrift) {
        if (tab.a(i, j) != Scalar(0)) eta.noalias() += (h * tab.a(i, j)) * fs[uj];
      }
      if constexpr (WithDiffusion) {
        if (tab.b(i, j) != Scalar(0)) eta.noalias() += tab.b(i, j) * gs[uj];
      }
      c_i += tab.a(i, j);
    }
    const auto ui = static_cast<std::size_t>(i);
    const Scalar stage_time = t + c_i * h;
    if constexpr (WithDrift) {
      fs[ui] = f(eta, stage_time);
      next.noalias() += (h * tab.alpha(i)) * fs[ui];
    }
    if constexpr (WithDiffusion) {
      const MatrixX<Scalar> gi = g(eta, stage_time);
      if (gi.cols() != dw.size()) throw ShapeError("diffusion columns do not match noise increments");
      gs[ui] = gi * dw;
      next.noalias() += tab.gamma(i) * gs[ui];
    }
  }
  return next;
}

struct NoCoefficient {};

}  // namespace detail

/// Full SRK step of dX = f dt + g o dW with J1 = dw.
template <typename Scalar, typename Drift, typename Diffusion>
VectorX<Scalar> srk_full_step(const Drift& f, const Diffusion& g, const VectorX<Scalar>& x,
                              Scalar t, Scalar h, const VectorX<Scalar>& dw,
                              const ButcherTableau<Scalar>& tab = ButcherTableau<Scalar>::r3()) {
  return detail::srk_step<true, true>(f, g, tab, x, t, h, dw);
}

/// Deterministic component: explicit RK3 on x' = f(x, t).
template <typename Scalar, typename Drift>
VectorX<Scalar> rk3_drift_step(const Drift& f, const VectorX<Scalar>& x, Scalar t, Scalar h,
                               const ButcherTableau<Scalar>& tab = ButcherTableau<Scalar>::r3()) {
  return detail::srk_step<true, false>(f, detail::NoCoefficient{}, tab, x, t, h, VectorX<Scalar>());
}

/// Stochastic component: the B/gamma half of the tableau driven by dw only.
/// `h` only shifts the stage times passed to g.
template <typename Scalar, typename Diffusion>
VectorX<Scalar> srk_diffusion_step(const Diffusion& g, const VectorX<Scalar>& x, Scalar t,
                                   const VectorX<Scalar>& dw, Scalar h = Scalar(0),
                                   const ButcherTableau<Scalar>& tab = ButcherTableau<Scalar>::r3()) {
  return detail::srk_step<false, true>(detail::NoCoefficient{}, g, tab, x, t, h, dw);
}

/// x + h f(x, t) + g(x, t) dw
template <typename Scalar, typename Drift, typename Diffusion>
VectorX<Scalar> em_step(const Drift& f, const Diffusion& g, const VectorX<Scalar>& x, Scalar t,
                        Scalar h, const VectorX<Scalar>& dw) {
  VectorX<Scalar> next = x + h * f(x, t);
  next.noalias() += g(x, t) * dw;
  return next;
}

// Problem-based forms.

inline Vector srk_full_step(const SbvpProblem& p, const Vector& x, double t, double h,
                            const Vector& dw) {
  return srk_full_step(p.drift, p.diffusion, x, t, h, dw);
}

inline Vector em_step(const SbvpProblem& p, const Vector& x, double t, double h,
                      const Vector& dw) {
  return em_step(p.drift, p.diffusion, x, t, h, dw);
}

enum class Stepper { FullSrk, DriftOnly, DiffusionOnly, EulerMaruyama };

/// One base-mesh step from index k to k + 1.
Vector step(Stepper stepper, const SbvpProblem& p, const Vector& x, const WienerPath& path,
            std::size_t k);

/// States at every base-mesh point of [mesh[first], mesh[last]], starting from x0.
std::vector<Vector> integrate(Stepper stepper, const SbvpProblem& p, const Vector& x0,
                              const WienerPath& path, std::size_t first, std::size_t last);

/// Time-based overload; throws QueryError if t_a or t_b is off the mesh.
std::vector<Vector> integrate(Stepper stepper, const SbvpProblem& p, const Vector& x0,
                              const WienerPath& path, double t_a, double t_b);

/// State at mesh[last] only.
Vector advance(Stepper stepper, const SbvpProblem& p, Vector x, const WienerPath& path,
               std::size_t first, std::size_t last);

}  // namespace sbvp
