#include "sbvp/integrators.hpp"

namespace sbvp {

Vector step(Stepper stepper, const SbvpProblem& p, const Vector& x, const WienerPath& path,
            std::size_t k) {
  const auto& mesh = path.mesh();
  const double t = mesh[k];
  const double h = mesh[k + 1] - t;
  switch (stepper) {
    case Stepper::FullSrk:
      return srk_full_step(p, x, t, h, path.increment_between(k, k + 1));
    case Stepper::DriftOnly:
      return rk3_drift_step(p.drift, x, t, h);
    case Stepper::DiffusionOnly:
      return srk_diffusion_step(p.diffusion, x, t, path.increment_between(k, k + 1), h);
    case Stepper::EulerMaruyama:
      return em_step(p, x, t, h, path.increment_between(k, k + 1));
  }
  throw ConfigError("unknown stepper");
}

std::vector<Vector> integrate(Stepper stepper, const SbvpProblem& p, const Vector& x0,
                              const WienerPath& path, std::size_t first, std::size_t last) {
  if (last < first || last >= path.mesh().size()) throw QueryError("invalid integration segment");
  std::vector<Vector> out;
  out.reserve(last - first + 1);
  out.push_back(x0);
  for (std::size_t k = first; k < last; ++k) out.push_back(step(stepper, p, out.back(), path, k));
  return out;
}

std::vector<Vector> integrate(Stepper stepper, const SbvpProblem& p, const Vector& x0,
                              const WienerPath& path, double t_a, double t_b) {
  return integrate(stepper, p, x0, path, path.mesh().index_of(t_a), path.mesh().index_of(t_b));
}

Vector advance(Stepper stepper, const SbvpProblem& p, Vector x, const WienerPath& path,
               std::size_t first, std::size_t last) {
  if (last < first || last >= path.mesh().size()) throw QueryError("invalid integration segment");
  for (std::size_t k = first; k < last; ++k) x = step(stepper, p, x, path, k);
  return x;
}

}  // namespace sbvp
