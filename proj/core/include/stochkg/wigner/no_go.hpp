#pragma once

#include <ostream>

#include "stochkg/kgwave/spectral_wave.hpp"
#include "stochkg/wigner/product_distribution.hpp"

namespace stochkg::wigner {

struct NoGoIntegrals {
  /// -4 beta^2 sum_cells h^d (|d_t Psi|^2 - |grad Psi|^2), spectral gradient.
  double grid = 0.0;
  /// -4 beta^2 M^2 V sum_k |A+(k)|^2, i.e. -4 beta^2 M^2 sum |c|^2 / (V w^2).
  double spectral = 0.0;
};

/// Both forms of the integral that must vanish for an on-shell product distribution.
/// Throws std::invalid_argument when the wave has a negative-energy part.
NoGoIntegrals no_go_integral(const kgwave::SpectralWave& w, double t, double beta = default_beta);

/// I_grid, I_spectral
void write_no_go_csv(std::ostream& out, const NoGoIntegrals& r);

}  // namespace stochkg::wigner
