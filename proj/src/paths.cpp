#include "sbvp/paths.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sbvp {

namespace {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

BaseMesh::BaseMesh(std::vector<double> points) : points_(std::move(points)) {
  if (points_.empty()) throw MeshError("base mesh must have at least one point");
  if (points_.front() != 0.0) throw MeshError("base mesh must start at 0");
  for (std::size_t k = 1; k < points_.size(); ++k) {
    if (!(points_[k] > points_[k - 1]) || !std::isfinite(points_[k]))
      throw MeshError("base mesh is not strictly increasing at index " + std::to_string(k));
  }
}

BaseMesh BaseMesh::uniform(std::size_t intervals, double horizon) {
  if (intervals == 0) throw MeshError("uniform mesh needs at least one interval");
  if (!(horizon > 0.0)) throw MeshError("horizon must be positive");
  std::vector<double> pts(intervals + 1);
  for (std::size_t k = 0; k < intervals; ++k)
    pts[k] = horizon * static_cast<double>(k) / static_cast<double>(intervals);
  pts[intervals] = horizon;
  return BaseMesh(std::move(pts));
}

std::size_t BaseMesh::index_of(double t) const {
  auto it = std::lower_bound(points_.begin(), points_.end(), t);
  if (it == points_.end() || *it != t)
    throw QueryError("time " + std::to_string(t) + " is not a base-mesh point");
  return static_cast<std::size_t>(it - points_.begin());
}

bool BaseMesh::contains(double t) const noexcept {
  return std::binary_search(points_.begin(), points_.end(), t);
}

void BaseMesh::require_points(std::span<const double> times) const {
  for (double t : times)
    if (!contains(t)) throw MeshError("time " + std::to_string(t) + " is not on the base mesh");
}

WienerPath::WienerPath(BaseMesh mesh, Matrix values, std::uint64_t seed,
                       std::uint64_t realization_index)
    : mesh_(std::move(mesh)), values_(std::move(values)), seed_(seed),
      realization_(realization_index) {
  if (values_.rows() < 1 || static_cast<std::size_t>(values_.cols()) != mesh_.size())
    throw ShapeError("path values must be dim x mesh size");
  if (!values_.col(0).isZero(0.0)) throw ShapeError("Wiener path must start at zero");
}

Vector WienerPath::value_at(double t) const { return values_.col(static_cast<Eigen::Index>(mesh_.index_of(t))); }

Vector WienerPath::increment(double t_a, double t_b) const {
  const auto a = mesh_.index_of(t_a);
  const auto b = mesh_.index_of(t_b);
  if (b < a) throw QueryError("increment requires t_a <= t_b");
  return increment_between(a, b);
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t realization_index) noexcept {
  return splitmix64(splitmix64(seed) + (realization_index + 1) * 0x9E3779B97F4A7C15ULL);
}

double NormalStream::uniform_symmetric() {
  const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;  // [0, 1)
  return 2.0 * u - 1.0;
}

double NormalStream::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = uniform_symmetric();
    v = uniform_symmetric();
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double factor = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * factor;
  has_spare_ = true;
  return u * factor;
}

WienerPath generate_path(std::uint64_t seed, std::uint64_t realization_index,
                         const BaseMesh& mesh, int dim) {
  if (dim < 1) throw ShapeError("path dimension must be >= 1");
  NormalStream normals(stream_seed(seed, realization_index));
  Matrix values(dim, static_cast<Eigen::Index>(mesh.size()));
  values.col(0).setZero();
  for (std::size_t k = 1; k < mesh.size(); ++k) {
    const double sd = std::sqrt(mesh[k] - mesh[k - 1]);
    for (int c = 0; c < dim; ++c) {
      const auto col = static_cast<Eigen::Index>(k);
      values(c, col) = values(c, col - 1) + sd * normals.next();
    }
  }
  return WienerPath(mesh, std::move(values), seed, realization_index);
}

WienerPath refine_path(const WienerPath& path, int factor) {
  if (factor < 1) throw ConfigError("refinement factor must be >= 1");
  if (factor == 1) return path;
  const auto& coarse = path.mesh();
  const std::size_t steps = coarse.size() - 1;
  std::vector<double> pts;
  pts.reserve(steps * static_cast<std::size_t>(factor) + 1);
  for (std::size_t k = 0; k < steps; ++k) {
    const double t0 = coarse[k], t1 = coarse[k + 1];
    pts.push_back(t0);
    for (int q = 1; q < factor; ++q) pts.push_back(t0 + (t1 - t0) * q / factor);
  }
  pts.push_back(coarse[steps]);
  BaseMesh fine(std::move(pts));

  // Sequential bridge: sample each inner point conditioned on the previous fine value
  // and the coarse right endpoint.
  NormalStream normals(stream_seed(~path.seed(), path.realization_index()));
  const int dim = path.dim();
  Matrix values(dim, static_cast<Eigen::Index>(fine.size()));
  Eigen::Index col = 0;
  for (std::size_t k = 0; k < steps; ++k) {
    values.col(col) = path.values().col(static_cast<Eigen::Index>(k));
    const double t_end = coarse[k + 1];
    const Vector w_end = path.values().col(static_cast<Eigen::Index>(k + 1));
    for (int q = 1; q < factor; ++q) {
      const double t_prev = fine[static_cast<std::size_t>(col)];
      const double t_now = fine[static_cast<std::size_t>(col + 1)];
      const double w = (t_now - t_prev) / (t_end - t_prev);
      const double sd = std::sqrt((t_now - t_prev) * (t_end - t_now) / (t_end - t_prev));
      for (int c = 0; c < dim; ++c)
        values(c, col + 1) = values(c, col) + w * (w_end(c) - values(c, col)) + sd * normals.next();
      ++col;
    }
    ++col;
  }
  values.col(col) = path.values().col(static_cast<Eigen::Index>(steps));
  return WienerPath(std::move(fine), std::move(values), path.seed(), path.realization_index());
}

}  // namespace sbvp
