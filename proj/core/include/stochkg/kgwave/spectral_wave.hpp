#pragma once

#include <array>
#include <vector>

#include "stochkg/core/fourier.hpp"
#include "stochkg/core/grid.hpp"

namespace stochkg::kgwave {

/// Complex values on the spatial grid at one time.
struct GridField {
  GridField(SpaceTimeGrid grid, double time, std::vector<Complex> values);
  GridField(SpaceTimeGrid grid, double time);  // zero field

  SpaceTimeGrid grid;
  double time;
  std::vector<Complex> values;
};

/// Exact free Klein-Gordon solution on a periodic box, stored per spectral index as
///   psi_hat(k, t) = A+(k) exp(-i w t) + A-(k) exp(+i w t),   w = sqrt(M^2 + k^2)
/// and synthesized as psi(t, x) = sum_k psi_hat(k, t) exp(i k.x). The coefficients A
/// already contain the momentum measure: a continuum amplitude c(p) on a box of volume V
/// corresponds to A = c / (V w).
class SpectralWave {
 public:
  SpectralWave(SpaceTimeGrid grid, double mass);
  SpectralWave(SpaceTimeGrid grid, double mass, std::vector<Complex> positive,
               std::vector<Complex> negative);

  /// Folds the measure into continuum amplitudes c+(p), c-(p).
  static SpectralWave from_momentum_amplitudes(SpaceTimeGrid grid, double mass,
                                               const std::vector<Complex>& c_positive,
                                               const std::vector<Complex>& c_negative);

  const SpaceTimeGrid& grid() const { return grid_; }
  double mass() const { return mass_; }
  const std::vector<Complex>& positive() const { return positive_; }
  const std::vector<Complex>& negative() const { return negative_; }
  std::vector<Complex>& positive() { return positive_; }
  std::vector<Complex>& negative() { return negative_; }

  /// Adds `amplitude * exp(-+i(w t - k.x))` for integer mode numbers `modes`.
  SpectralWave& add_mode(const std::array<long, 3>& modes, Complex amplitude, int energy_sign = +1);

  /// w(k) at spectral index `flat`.
  double frequency(std::size_t flat) const;
  /// Continuum amplitude c(p) = V w A for the given branch.
  Complex momentum_amplitude(std::size_t flat, int energy_sign) const;

  bool has_positive() const;
  bool has_negative() const;

  SpectralWave operator+(const SpectralWave& other) const;
  SpectralWave operator*(Complex s) const;

 private:
  SpaceTimeGrid grid_;
  double mass_;
  std::vector<Complex> positive_;
  std::vector<Complex> negative_;
};

/// Positive- or negative-energy packet with Gaussian spectral weight
/// exp(-|k - k0|^2 / (4 sigma^2)) exp(-i k.x0), scaled so the peak coefficient is `peak`.
SpectralWave gaussian_packet(const SpaceTimeGrid& grid, double mass, const Vec3& k_centre,
                             double k_sigma, const Vec3& x_centre, int energy_sign = +1,
                             double peak = 1.0);

GridField synthesize(const SpectralWave& w, double t);
/// d psi / dt from the exact per-mode time dependence.
GridField time_derivative(const SpectralWave& w, double t);
/// d^2 psi / dt^2 from the exact per-mode time dependence.
GridField second_time_derivative(const SpectralWave& w, double t);

/// Sum |psi|^2 times the cell volume (pairwise summation).
double norm(const GridField& f);

/// Spectral sqrt(M^2 - laplacian): every Fourier mode times sqrt(M^2 + |k|^2).
GridField sqrt_operator_apply(const GridField& f, double mass);

/// psi+- = (psi +- i Omega^{-1} d_t psi) / 2 mode by mode, Omega = sqrt(M^2 + k^2).
/// A mode with Omega = 0 (massless, k = 0) goes entirely to psi+.
std::pair<GridField, GridField> energy_sign_split(const GridField& f, const GridField& ft,
                                                  double mass);

/// Recovers the branch coefficients of the solution with Cauchy data (psi, d_t psi) at f.time.
SpectralWave wave_from_fields(const GridField& f, const GridField& ft, double mass);

/// (d_t^2 - laplacian + M^2) psi with spectral space derivatives and the exact time
/// dependence, relative to max |M^2 psi| + max |laplacian psi|.
double kg_relative_residual(const SpectralWave& w, double t);

}  // namespace stochkg::kgwave
