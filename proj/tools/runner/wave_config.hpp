#pragma once

#include "config.hpp"
#include "stochkg/kgwave/spectral_wave.hpp"

namespace stochkg::runner {

/// Periodic 1D box: "box_length_in_length" and "points" (a power of two).
SpaceTimeGrid read_line_grid(ConfigReader& r, double default_length, std::uint64_t default_points);

/// Superposition from a "modes" array of {"mode_numbers": [n1, n2, n3], "amplitude_re",
/// "amplitude_im", "energy_sign"}; `fallback` is used when the key is missing.
kgwave::SpectralWave read_modes(ConfigReader& r, const SpaceTimeGrid& grid, double mass, const Json& fallback);

}  // namespace stochkg::runner
