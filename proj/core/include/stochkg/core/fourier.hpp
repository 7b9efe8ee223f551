#pragma once

// Discrete Fourier utilities on periodic SpaceTimeGrids.
//
// Convention: a grid function f_j is expanded as f_j = sum_k F_k exp(i k . x_j), so
// to_spectrum divides by the number of points and from_spectrum does not.

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "stochkg/core/grid.hpp"

namespace stochkg {

using Complex = std::complex<double>;

std::vector<Complex> to_spectrum(const SpaceTimeGrid& grid, std::span<const Complex> values);
std::vector<Complex> from_spectrum(const SpaceTimeGrid& grid, std::span<const Complex> coefficients);

/// Multiplies every Fourier mode by `multiplier(k)` and transforms back.
std::vector<Complex> apply_spectral_multiplier(
    const SpaceTimeGrid& grid, std::span<const Complex> values,
    const std::function<Complex(const Vec3&)>& multiplier);

enum class DerivativeScheme { central2, spectral };

/// d/dx_axis on the periodic grid. The spectral variant zeroes the Nyquist mode.
std::vector<Complex> derivative(const SpaceTimeGrid& grid, std::span<const Complex> values,
                                int axis, DerivativeScheme scheme);
std::vector<double> derivative(const SpaceTimeGrid& grid, std::span<const double> values,
                               int axis, DerivativeScheme scheme);

std::vector<Complex> laplacian(const SpaceTimeGrid& grid, std::span<const Complex> values,
                               DerivativeScheme scheme);
std::vector<double> laplacian(const SpaceTimeGrid& grid, std::span<const double> values,
                              DerivativeScheme scheme);

}  // namespace stochkg
