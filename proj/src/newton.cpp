#include "sbvp/newton.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace sbvp {

void NewtonConfig::validate() const {
  if (!(tol > 0.0)) throw ConfigError("Newton tolerance must be positive");
  if (max_iter < 1) throw ConfigError("Newton max_iter must be >= 1");
  if (!(fd_epsilon > 0.0)) throw ConfigError("fd_epsilon must be positive");
  if (!(lambda_min > 0.0 && lambda_min <= 1.0)) throw ConfigError("lambda_min must be in (0, 1]");
  if (!(lambda_init >= lambda_min && lambda_init <= 1.0))
    throw ConfigError("lambda_init must be in [lambda_min, 1]");
  if (!(lambda_factor > 0.0 && lambda_factor < 1.0))
    throw ConfigError("lambda_factor must be in (0, 1)");
}

Vector solve_checked(const Matrix& jacobian, const Vector& rhs) {
  Eigen::PartialPivLU<Matrix> lu(jacobian);
  const double scale = jacobian.norm();
  const double min_pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
  if (!(min_pivot >= 1e-14 * scale) || scale == 0.0)
    throw LinearAlgebraError("singular Jacobian (min pivot " + std::to_string(min_pivot) + ")");
  return lu.solve(rhs);
}

Matrix fd_jacobian_dense(const ResidualFn& residual, const Vector& s, const Vector& f_at_s,
                         double fd_epsilon, bool central) {
  Matrix jac(f_at_s.size(), s.size());
  Vector probe = s;
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    const double eps = fd_epsilon * (1.0 + std::abs(s(k)));
    probe(k) = s(k) + eps;
    const Vector fp = residual(probe);
    if (central) {
      probe(k) = s(k) - eps;
      jac.col(k) = (fp - residual(probe)) / (2.0 * eps);
    } else {
      jac.col(k) = (fp - f_at_s) / eps;
    }
    probe(k) = s(k);
  }
  return jac;
}

NewtonResult damped_newton(const ResidualFn& residual, const JacobianFn& jacobian,
                           const Vector& s0, const NewtonConfig& cfg) {
  cfg.validate();
  NewtonResult out;
  Vector s = s0;
  Vector f = residual(s);
  double norm = f.norm();
  out.trace.push_back({0, norm, 0.0});

  Vector best = s;
  double best_norm = norm;

  for (int it = 1; it <= cfg.max_iter; ++it) {
    if (norm <= cfg.tol) break;
    const Matrix jac = jacobian(s, f);
    const Vector delta = cfg.min_norm_steps
                             ? Vector(jac.completeOrthogonalDecomposition().solve(f))
                             : solve_checked(jac, f);

    double lambda = cfg.lambda_init;
    Vector trial = s - lambda * delta;
    Vector f_trial = residual(trial);
    while (!(f_trial.norm() <= (1.0 - 0.5 * lambda) * norm) &&
           lambda * cfg.lambda_factor >= cfg.lambda_min) {
      lambda *= cfg.lambda_factor;
      trial = s - lambda * delta;
      f_trial = residual(trial);
    }
    s = std::move(trial);
    f = std::move(f_trial);
    norm = f.norm();
    out.iterations = it;
    out.trace.push_back({it, norm, lambda});
    if (norm < best_norm) {
      best = s;
      best_norm = norm;
    }
  }

  if (!(norm <= cfg.tol)) {
    throw NonConvergenceError("damped Newton did not converge in " + std::to_string(cfg.max_iter) +
                                  " iterations (||F|| = " + std::to_string(best_norm) + ")",
                              best, best_norm);
  }
  out.solution = std::move(s);
  out.residual_norm = norm;
  return out;
}

}  // namespace sbvp
