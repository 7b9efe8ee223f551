#pragma once

#include <array>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "stochkg/kgwave/spectral_wave.hpp"

namespace stochkg::madelung {

/// Raised by decompose when the wave vanishes identically.
class EmptyFieldError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised by fit_beta_sq when the quantum-potential regressor is numerically zero.
class IllPosedFit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Components = std::array<std::vector<double>, 4>;

/// Density and momentum field of a complex wave around one time level.
///
/// rho is kept at the three times t - dt, t, t + dt. The momentum field
///   u^mu = -Im(psi* d^mu psi) / rho
/// is kept at the centre and, when decompose received five levels, also at t +- dt.
/// Unused spatial components are zero.
struct MadelungField {
  SpaceTimeGrid grid = SpaceTimeGrid::line(1.0, 2);
  double time = 0.0;
  double dt = 0.0;
  double mass = 0.0;
  double rho_floor = 0.0;
  std::array<std::vector<double>, 3> rho_levels;
  std::vector<Components> u_levels;  // 1 entry (centre) or 3 (t - dt, t, t + dt)
  std::vector<std::uint8_t> mask;    // 1 where rho < rho_floor at the centre

  const std::vector<double>& rho() const { return rho_levels[1]; }
  const Components& u() const { return u_levels.size() == 1 ? u_levels[0] : u_levels[1]; }
  double mask_fraction() const;
  /// Multiplies u^mu by `factor` at every stored level.
  void scale_velocity(int mu, double factor);
};

/// `levels` are 3 or 5 consecutive, equally spaced time levels centred on the middle one.
/// Space derivatives are spectral, time derivatives central. Points where rho is below
/// rho_floor_fraction * max(rho) are masked and get u = 0.
MadelungField decompose(const std::vector<kgwave::GridField>& levels, double mass,
                        double rho_floor_fraction = 1e-10);

/// Time levels t + j dt for j = -2..2 of a spectral wave.
std::vector<kgwave::GridField> time_levels(const kgwave::SpectralWave& w, double t, double dt,
                                           int half_width = 2);

/// Residual on the grid; masked points hold 0 and are skipped by the norms.
struct ResidualField {
  std::vector<double> values;
  std::vector<std::uint8_t> mask;
};

/// sqrt(sum rho r^2 / sum rho) over unmasked points.
double weighted_l2(const ResidualField& r, const std::vector<double>& rho);
double max_abs(const ResidualField& r);

/// d_mu(rho u^mu): central time difference of rho u^0 plus spectral divergence of rho u.
/// Needs a field decomposed from five levels and mask coverage below 50%.
ResidualField continuity_residual(const MadelungField& mf);

enum class HjForm { half_kinetic, canonical };
/// "half_kinetic" or "canonical"; anything else throws std::invalid_argument.
HjForm parse_hj_form(std::string_view tag);
const char* hj_form_name(HjForm form);

/// Quantum potential Q = box(sqrt rho) / sqrt rho, evaluated from derivatives of rho as
/// box(rho) / (2 rho) - (d rho . d rho) / (4 rho^2).
ResidualField quantum_potential(const MadelungField& mf);

/// canonical:    u.u - m^2 - 2 beta^2 Q
/// half_kinetic: u.u / 2 + (beta^2 / 2) d ln rho . d ln rho - beta^2 box(rho) / rho - m^2
ResidualField hj_residual(const MadelungField& mf, double beta_sq, HjForm form);

struct BetaFit {
  double beta_sq = 0.0;
  double standard_error = 0.0;
  std::size_t points = 0;
};

/// rho-weighted least squares of u.u - m^2 on Q through the origin over unmasked points;
/// beta^2 is half the slope. Throws IllPosedFit when the weighted RMS of Q is below
/// `regressor_tolerance` times m^2 (or 1 for m = 0).
BetaFit fit_beta_sq(const MadelungField& mf, double regressor_tolerance = 1e-8);

/// Emits the CSV columns points,dt,form,beta_sq,l2_residual,linf_residual.
void write_residual_csv_header(std::ostream& out);
void write_residual_csv_row(std::ostream& out, std::size_t points, double dt, std::string_view form,
                            double beta_sq, double l2, double linf);

}  // namespace stochkg::madelung
