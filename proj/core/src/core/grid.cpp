#include "stochkg/core/grid.hpp"

#include <numbers>
#include <stdexcept>
#include <string>

namespace stochkg {
namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace

SpaceTimeGrid::SpaceTimeGrid(int dim, const std::array<double, 3>& lengths,
                             const std::array<std::size_t, 3>& points, double dt)
    : dim_(dim), lengths_(lengths), points_(points), dt_(dt) {
  if (dim != 1 && dim != 3) throw std::invalid_argument("SpaceTimeGrid: dimension must be 1 or 3");
  for (int a = 0; a < 3; ++a) {
    if (a >= dim) {
      lengths_[a] = 0.0;
      points_[a] = 1;
      continue;
    }
    if (!(lengths_[a] > 0.0)) {
      throw std::invalid_argument("SpaceTimeGrid: length on axis " + std::to_string(a) +
                                  " must be positive");
    }
    if (!is_power_of_two(points_[a]) || points_[a] < 2) {
      throw std::invalid_argument("SpaceTimeGrid: points on axis " + std::to_string(a) +
                                  " must be a power of two >= 2");
    }
  }
  if (dt < 0.0) throw std::invalid_argument("SpaceTimeGrid: dt must be non-negative");
}

SpaceTimeGrid SpaceTimeGrid::line(double length, std::size_t points, double dt) {
  return {1, {length, 0.0, 0.0}, {points, 1, 1}, dt};
}

SpaceTimeGrid SpaceTimeGrid::cube(double length, std::size_t points, double dt) {
  return {3, {length, length, length}, {points, points, points}, dt};
}

std::size_t SpaceTimeGrid::size() const { return points_[0] * points_[1] * points_[2]; }

double SpaceTimeGrid::cell_volume() const {
  double v = 1.0;
  for (int a = 0; a < dim_; ++a) v *= spacing(a);
  return v;
}

double SpaceTimeGrid::volume() const {
  double v = 1.0;
  for (int a = 0; a < dim_; ++a) v *= lengths_[a];
  return v;
}

SpaceTimeGrid SpaceTimeGrid::with_dt(double dt) const {
  return {dim_, lengths_, points_, dt};
}

long SpaceTimeGrid::mode_number(int axis, std::size_t i) const {
  const auto n = static_cast<long>(points_[axis]);
  const auto k = static_cast<long>(i);
  return k < n / 2 ? k : k - n;
}

double SpaceTimeGrid::wavenumber(int axis, std::size_t i) const {
  if (axis >= dim_) return 0.0;
  return 2.0 * std::numbers::pi * static_cast<double>(mode_number(axis, i)) / lengths_[axis];
}

std::array<std::size_t, 3> SpaceTimeGrid::unflatten(std::size_t flat) const {
  std::array<std::size_t, 3> idx{};
  idx[2] = flat % points_[2];
  flat /= points_[2];
  idx[1] = flat % points_[1];
  idx[0] = flat / points_[1];
  return idx;
}

std::size_t SpaceTimeGrid::flatten(const std::array<std::size_t, 3>& idx) const {
  return (idx[0] * points_[1] + idx[1]) * points_[2] + idx[2];
}

Vec3 SpaceTimeGrid::position(std::size_t flat) const {
  const auto idx = unflatten(flat);
  Vec3 r;
  for (int a = 0; a < dim_; ++a) r[a] = coordinate(a, idx[a]);
  return r;
}

Vec3 SpaceTimeGrid::wave_vector(std::size_t flat) const {
  const auto idx = unflatten(flat);
  Vec3 k;
  for (int a = 0; a < dim_; ++a) k[a] = wavenumber(a, idx[a]);
  return k;
}

std::size_t SpaceTimeGrid::spectral_index(const std::array<long, 3>& modes) const {
  std::array<std::size_t, 3> idx{};
  for (int a = 0; a < 3; ++a) {
    const auto n = static_cast<long>(points_[a]);
    long m = a < dim_ ? modes[a] % n : 0;
    if (m < 0) m += n;
    idx[a] = static_cast<std::size_t>(m);
  }
  return flatten(idx);
}

}  // namespace stochkg
