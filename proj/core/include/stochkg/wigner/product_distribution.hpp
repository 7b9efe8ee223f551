#pragma once

#include <array>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "stochkg/kgwave/spectral_wave.hpp"

namespace stochkg::wigner {

inline constexpr double default_beta = 1.0 / std::numbers::sqrt2;

/// Generating function Q0(x, z) = Psi*(x + beta z) Psi(x - beta z).
///
/// Psi is the sum of one or more spectral waves, evaluated pointwise by direct mode sums,
/// so x +- beta z may fall anywhere (the box is periodic). Components with different masses
/// are allowed and serve as a broken-premise control. With `symmetrize` the conjugate
/// ordering Psi(x + beta z) Psi*(x - beta z) is added, which makes Q0 real.
class ProductDistribution {
 public:
  explicit ProductDistribution(const kgwave::SpectralWave& wave, double beta = default_beta,
                               bool symmetrize = false);

  /// Adds another wave to Psi; its mass may differ.
  ProductDistribution& add_component(const kgwave::SpectralWave& wave);
  /// The particle mass m of the mass-shell condition; defaults to the first wave's mass.
  ProductDistribution& set_particle_mass(double m);

  double beta() const { return beta_; }
  bool symmetrized() const { return symmetrize_; }
  double particle_mass() const { return particle_mass_; }
  /// 1 + spatial dimension of the waves.
  int spacetime_dim() const { return spacetime_dim_; }

  Complex psi(const FourVector& x) const;

 private:
  struct Term {
    Vec3 k;
    double omega;
    Complex positive;
    Complex negative;
  };
  void append(const kgwave::SpectralWave& wave);

  std::vector<Term> terms_;
  double beta_;
  bool symmetrize_;
  double particle_mass_;
  int spacetime_dim_;
};

Complex qtilde(const ProductDistribution& pd, const FourVector& x, const FourVector& z);

struct XZPoint {
  FourVector x;
  FourVector z;
};

/// All combinations of x = (t, x1) and z = (z0, z1) for the given coordinate lists.
std::vector<XZPoint> xz_points(double t, std::span<const double> x1, std::span<const double> z0,
                               std::span<const double> z1);

/// Finite-difference derivative of Q0 in z: one entry of `axes` per derivative, each a
/// contravariant index; `lowered` applies the metric sign per index (d/dz_mu).
/// Central stencils of the given accuracy (2, 4, 6, 8) are composed axis by axis.
Complex z_derivative(const ProductDistribution& pd, const FourVector& x, const FourVector& z,
                     std::span<const int> axes, double h, int accuracy, bool lowered = true);

/// d^2 Q0 / dx^mu dz_mu at every point by composed central differences of step h.
std::vector<Complex> mixed_derivative_residual(const ProductDistribution& pd,
                                               std::span<const XZPoint> points, double h,
                                               int accuracy = 2);

/// (d^2 / dz^mu dz_mu + m^2) Q0 with m the particle mass; second-derivative stencils in z.
std::vector<Complex> mass_shell_residual(const ProductDistribution& pd,
                                         std::span<const XZPoint> points, double h,
                                         int accuracy = 8);

}  // namespace stochkg::wigner
