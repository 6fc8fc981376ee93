#pragma once

#include "sbvp/core.hpp"

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace sbvp {

/// Strictly increasing grid on [0, T] on which every path and trajectory lives.
class BaseMesh {
public:
  BaseMesh() = default;
  /// Throws MeshError unless `points` is strictly increasing, starts at 0 and has >= 1 point.
  explicit BaseMesh(std::vector<double> points);

  /// intervals + 1 equispaced points on [0, horizon].
  static BaseMesh uniform(std::size_t intervals, double horizon = 1.0);

  std::size_t size() const noexcept { return points_.size(); }
  double operator[](std::size_t k) const { return points_[k]; }
  double horizon() const noexcept { return points_.back(); }
  std::span<const double> points() const noexcept { return points_; }

  /// Index of the mesh point exactly equal to t; throws QueryError otherwise.
  std::size_t index_of(double t) const;
  bool contains(double t) const noexcept;

  /// Throws MeshError unless every time in `times` is a mesh point.
  void require_points(std::span<const double> times) const;

private:
  std::vector<double> points_;
};

/// A sampled m-dimensional Brownian path on a base mesh. Immutable after construction.
class WienerPath {
public:
  /// `values` holds one column per mesh point; column 0 must be zero.
  WienerPath(BaseMesh mesh, Matrix values, std::uint64_t seed = 0,
             std::uint64_t realization_index = 0);

  const BaseMesh& mesh() const noexcept { return mesh_; }
  int dim() const noexcept { return static_cast<int>(values_.rows()); }
  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t realization_index() const noexcept { return realization_; }

  /// All tabulated values, dim() x mesh().size().
  const Matrix& values() const noexcept { return values_; }

  Vector value_at(double t) const;
  Vector increment(double t_a, double t_b) const;

  // Index-based forms used by the integrators; no bounds checks beyond Eigen's.
  auto value_at_index(std::size_t k) const { return values_.col(static_cast<Eigen::Index>(k)); }
  Vector increment_between(std::size_t a, std::size_t b) const {
    return values_.col(static_cast<Eigen::Index>(b)) - values_.col(static_cast<Eigen::Index>(a));
  }

private:
  BaseMesh mesh_;
  Matrix values_;
  std::uint64_t seed_;
  std::uint64_t realization_;
};

/// Seed of the RNG stream for one realization:
/// splitmix64(splitmix64(seed) + (realization_index + 1) * 0x9E3779B97F4A7C15).
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t realization_index) noexcept;

/// Standard normal variates from a mt19937_64 stream via the Marsaglia polar method.
class NormalStream {
public:
  explicit NormalStream(std::uint64_t stream_seed) : engine_(stream_seed) {}
  double next();

private:
  double uniform_symmetric();  // uniform on (-1, 1) from the top 53 bits

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Independent N(0, dt I) increments on every mesh step, W(0) = 0.
WienerPath generate_path(std::uint64_t seed, std::uint64_t realization_index,
                         const BaseMesh& mesh, int dim);

/// Brownian-bridge refinement: inserts (factor - 1) points inside each mesh step.
/// The original points keep their values. Uses its own stream derived from the path's seed.
WienerPath refine_path(const WienerPath& path, int factor);

}  // namespace sbvp
