#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stochkg/kgwave/spectral_wave.hpp"

namespace stochkg::kgwave {
namespace {

void require_same_grid(const GridField& a, const GridField& b) {
  if (!(a.grid == b.grid)) throw std::invalid_argument("grid fields live on different grids");
}

}  // namespace

GridField sqrt_operator_apply(const GridField& f, double mass) {
  auto values = apply_spectral_multiplier(f.grid, f.values, [mass](const Vec3& k) {
    return Complex(std::sqrt(mass * mass + dot(k, k)), 0.0);
  });
  return {f.grid, f.time, std::move(values)};
}

std::pair<GridField, GridField> energy_sign_split(const GridField& f, const GridField& ft,
                                                  double mass) {
  require_same_grid(f, ft);
  const auto& grid = f.grid;
  const auto psi = to_spectrum(grid, f.values);
  const auto dpsi = to_spectrum(grid, ft.values);
  std::vector<Complex> plus(grid.size());
  std::vector<Complex> minus(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Vec3 k = grid.wave_vector(i);
    const double om = std::sqrt(mass * mass + dot(k, k));
    if (om == 0.0) {
      plus[i] = psi[i];
      continue;
    }
    const Complex rotated = Complex(0.0, 1.0 / om) * dpsi[i];
    plus[i] = 0.5 * (psi[i] + rotated);
    minus[i] = 0.5 * (psi[i] - rotated);
  }
  return {GridField(grid, f.time, from_spectrum(grid, plus)),
          GridField(grid, f.time, from_spectrum(grid, minus))};
}

SpectralWave wave_from_fields(const GridField& f, const GridField& ft, double mass) {
  require_same_grid(f, ft);
  const auto& grid = f.grid;
  const auto psi = to_spectrum(grid, f.values);
  const auto dpsi = to_spectrum(grid, ft.values);
  SpectralWave w(grid, mass);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double om = w.frequency(i);
    if (om == 0.0) {
      w.positive()[i] = psi[i];
      continue;
    }
    const Complex rotated = Complex(0.0, 1.0 / om) * dpsi[i];
    w.positive()[i] = 0.5 * (psi[i] + rotated) * std::polar(1.0, om * f.time);
    w.negative()[i] = 0.5 * (psi[i] - rotated) * std::polar(1.0, -om * f.time);
  }
  return w;
}

double kg_relative_residual(const SpectralWave& w, double t) {
  const GridField psi = synthesize(w, t);
  const GridField tt = second_time_derivative(w, t);
  const auto lap = laplacian(w.grid(), psi.values, DerivativeScheme::spectral);
  const double m2 = w.mass() * w.mass();
  double res = 0.0;
  double mass_term = 0.0;
  double lap_term = 0.0;
  for (std::size_t i = 0; i < psi.values.size(); ++i) {
    res = std::max(res, std::abs(tt.values[i] - lap[i] + m2 * psi.values[i]));
    mass_term = std::max(mass_term, std::abs(m2 * psi.values[i]));
    lap_term = std::max(lap_term, std::abs(lap[i]));
  }
  const double scale = mass_term + lap_term;
  return scale == 0.0 ? 0.0 : res / scale;
}

}  // namespace stochkg::kgwave
