#include <cmath>
#include <stdexcept>

#include "stochkg/kgwave/spectral_wave.hpp"

namespace stochkg::kgwave {

SpectralWave::SpectralWave(SpaceTimeGrid grid, double mass)
    : SpectralWave(grid, mass, std::vector<Complex>(grid.size()), std::vector<Complex>(grid.size())) {}

SpectralWave::SpectralWave(SpaceTimeGrid grid, double mass, std::vector<Complex> positive,
                           std::vector<Complex> negative)
    : grid_(std::move(grid)), mass_(mass), positive_(std::move(positive)), negative_(std::move(negative)) {
  if (!(mass >= 0.0)) throw std::invalid_argument("SpectralWave: mass must be non-negative");
  if (positive_.size() != grid_.size() || negative_.size() != grid_.size()) {
    throw std::invalid_argument("SpectralWave: coefficient count does not match the grid");
  }
}

SpectralWave SpectralWave::from_momentum_amplitudes(SpaceTimeGrid grid, double mass,
                                                    const std::vector<Complex>& c_positive,
                                                    const std::vector<Complex>& c_negative) {
  SpectralWave w(std::move(grid), mass);
  if (c_positive.size() != w.grid_.size() || c_negative.size() != w.grid_.size()) {
    throw std::invalid_argument("from_momentum_amplitudes: coefficient count does not match the grid");
  }
  const double volume = w.grid_.volume();
  for (std::size_t i = 0; i < w.grid_.size(); ++i) {
    const double om = w.frequency(i);
    if (om == 0.0) {
      if (c_positive[i] != Complex{} || c_negative[i] != Complex{}) {
        throw std::domain_error("from_momentum_amplitudes: zero-frequency mode has no measure");
      }
      continue;
    }
    w.positive_[i] = c_positive[i] / (volume * om);
    w.negative_[i] = c_negative[i] / (volume * om);
  }
  return w;
}

SpectralWave& SpectralWave::add_mode(const std::array<long, 3>& modes, Complex amplitude,
                                     int energy_sign) {
  const std::size_t idx = grid_.spectral_index(modes);
  if (energy_sign > 0) {
    positive_[idx] += amplitude;
  } else {
    negative_[idx] += amplitude;
  }
  return *this;
}

double SpectralWave::frequency(std::size_t flat) const {
  const Vec3 k = grid_.wave_vector(flat);
  return std::sqrt(mass_ * mass_ + dot(k, k));
}

Complex SpectralWave::momentum_amplitude(std::size_t flat, int energy_sign) const {
  const Complex a = energy_sign > 0 ? positive_[flat] : negative_[flat];
  return a * (grid_.volume() * frequency(flat));
}

bool SpectralWave::has_positive() const {
  for (const auto& c : positive_) {
    if (c != Complex{}) return true;
  }
  return false;
}

bool SpectralWave::has_negative() const {
  for (const auto& c : negative_) {
    if (c != Complex{}) return true;
  }
  return false;
}

SpectralWave SpectralWave::operator+(const SpectralWave& other) const {
  if (!(other.grid_ == grid_) || other.mass_ != mass_) {
    throw std::invalid_argument("SpectralWave: sum needs equal grids and masses");
  }
  SpectralWave out = *this;
  for (std::size_t i = 0; i < positive_.size(); ++i) {
    out.positive_[i] += other.positive_[i];
    out.negative_[i] += other.negative_[i];
  }
  return out;
}

SpectralWave SpectralWave::operator*(Complex s) const {
  SpectralWave out = *this;
  for (std::size_t i = 0; i < positive_.size(); ++i) {
    out.positive_[i] *= s;
    out.negative_[i] *= s;
  }
  return out;
}

SpectralWave gaussian_packet(const SpaceTimeGrid& grid, double mass, const Vec3& k_centre,
                             double k_sigma, const Vec3& x_centre, int energy_sign, double peak) {
  if (!(k_sigma > 0.0)) throw std::invalid_argument("gaussian_packet: k_sigma must be positive");
  SpectralWave w(grid, mass);
  auto& coeffs = energy_sign > 0 ? w.positive() : w.negative();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Vec3 k = grid.wave_vector(i);
    const Vec3 d = k - k_centre;
    const double envelope = std::exp(-dot(d, d) / (4.0 * k_sigma * k_sigma));
    coeffs[i] = peak * envelope * std::polar(1.0, -dot(k, x_centre));
  }
  return w;
}

namespace {

enum class TimeFactor { value, first, second };

GridField evaluate(const SpectralWave& w, double t, TimeFactor which) {
  const auto& grid = w.grid();
  std::vector<Complex> spec(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Complex a = w.positive()[i];
    const Complex b = w.negative()[i];
    if (a == Complex{} && b == Complex{}) continue;
    const double om = w.frequency(i);
    const Complex ep = std::polar(1.0, -om * t);
    const Complex em = std::conj(ep);
    switch (which) {
      case TimeFactor::value:
        spec[i] = a * ep + b * em;
        break;
      case TimeFactor::first:
        spec[i] = Complex(0.0, -om) * a * ep + Complex(0.0, om) * b * em;
        break;
      case TimeFactor::second:
        spec[i] = -om * om * (a * ep + b * em);
        break;
    }
  }
  return {grid, t, from_spectrum(grid, spec)};
}

}  // namespace

GridField synthesize(const SpectralWave& w, double t) { return evaluate(w, t, TimeFactor::value); }
GridField time_derivative(const SpectralWave& w, double t) { return evaluate(w, t, TimeFactor::first); }
GridField second_time_derivative(const SpectralWave& w, double t) {
  return evaluate(w, t, TimeFactor::second);
}

}  // namespace stochkg::kgwave
