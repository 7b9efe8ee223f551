#pragma once

#include <array>
#include <cstddef>

#include "stochkg/core/four_vector.hpp"

namespace stochkg {

/// Periodic box [0, L_a) per axis with a power-of-two number of points and a time step.
///
/// Points are stored row-major with the last active axis fastest, which is the layout
/// FFTW expects. Wavenumbers follow the FFT ordering: index n maps to 2*pi*n/L for
/// n < N/2 and to 2*pi*(n - N)/L otherwise.
class SpaceTimeGrid {
 public:
  SpaceTimeGrid(int dim, const std::array<double, 3>& lengths,
                const std::array<std::size_t, 3>& points, double dt);

  static SpaceTimeGrid line(double length, std::size_t points, double dt = 0.0);
  static SpaceTimeGrid cube(double length, std::size_t points, double dt = 0.0);

  int dim() const { return dim_; }
  double length(int axis) const { return lengths_[axis]; }
  std::size_t points(int axis) const { return points_[axis]; }
  double spacing(int axis) const { return lengths_[axis] / static_cast<double>(points_[axis]); }
  double dt() const { return dt_; }
  bool periodic() const { return true; }

  std::size_t size() const;
  double cell_volume() const;
  double volume() const;

  SpaceTimeGrid with_dt(double dt) const;

  /// Integer mode number of FFT index `i` on `axis` (in [-N/2, N/2)).
  long mode_number(int axis, std::size_t i) const;
  double wavenumber(int axis, std::size_t i) const;
  double coordinate(int axis, std::size_t i) const { return static_cast<double>(i) * spacing(axis); }

  std::array<std::size_t, 3> unflatten(std::size_t flat) const;
  std::size_t flatten(const std::array<std::size_t, 3>& idx) const;

  /// Position of grid point `flat` (unused axes are zero).
  Vec3 position(std::size_t flat) const;
  /// Wave vector of spectral index `flat` (unused axes are zero).
  Vec3 wave_vector(std::size_t flat) const;
  /// Flat spectral index of integer mode numbers (wrapped into range).
  std::size_t spectral_index(const std::array<long, 3>& modes) const;

  friend bool operator==(const SpaceTimeGrid&, const SpaceTimeGrid&) = default;

 private:
  int dim_;
  std::array<double, 3> lengths_;
  std::array<std::size_t, 3> points_;
  double dt_;
};

}  // namespace stochkg
