#include "stochkg/vacuum/mode_set.hpp"

#include <cmath>
#include <numbers>

namespace stochkg::vacuum {

double zero_point_h(double frequency) {
  return std::sqrt(frequency / (2.0 * std::numbers::pi * std::numbers::pi));
}

double mode_amplitude(double frequency, double k_spacing) {
  return std::pow(k_spacing, 1.5) * zero_point_h(frequency) / frequency;
}

Vec3 polarization_vector(const Vec3& k, int polarization) {
  const double kn = norm(k);
  if (!(kn > 0.0)) throw std::invalid_argument("polarization_vector: k must be nonzero");
  const Vec3 k_hat = k / kn;

  int axis = 0;
  for (int a = 1; a < 3; ++a) {
    if (std::abs(k_hat[a]) < std::abs(k_hat[axis])) axis = a;
  }
  Vec3 seed;
  seed[axis] = 1.0;
  Vec3 e1 = seed - dot(seed, k_hat) * k_hat;
  e1 = e1 / norm(e1);
  if (polarization == 1) return e1;
  if (polarization == 2) return cross(k_hat, e1);
  throw std::invalid_argument("polarization_vector: polarization must be 1 or 2");
}

ModeSet::ModeSet(double k_spacing, double cutoff, std::vector<Mode> modes)
    : k_spacing_(k_spacing), cutoff_(cutoff), modes_(std::move(modes)) {}

ModeSet ModeSet::with_resampled_phases(SeededRng& rng) const {
  ModeSet out = *this;
  for (auto& m : out.modes_) m.phase = 2.0 * std::numbers::pi * rng.uniform();
  return out;
}

bool operator==(const ModeSet& a, const ModeSet& b) {
  if (a.k_spacing_ != b.k_spacing_ || a.cutoff_ != b.cutoff_ || a.size() != b.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Mode& x = a.modes_[i];
    const Mode& y = b.modes_[i];
    if (!(x.k == y.k) || x.polarization != y.polarization ||
        !(x.polarization_vector == y.polarization_vector) || x.phase != y.phase ||
        x.amplitude != y.amplitude) {
      return false;
    }
  }
  return true;
}

ModeSet sample_modes(double k_spacing, double cutoff, SeededRng& rng) {
  if (!(k_spacing > 0.0) || !(cutoff > 0.0)) {
    throw ConfigurationError("sample_modes: k_spacing and cutoff must be positive");
  }
  if (cutoff < k_spacing) {
    throw ConfigurationError("sample_modes: cutoff below k_spacing leaves an empty lattice");
  }
  const auto reach = static_cast<long>(std::floor(cutoff / k_spacing));
  const double cutoff_sq = cutoff * cutoff;

  std::vector<Mode> modes;
  for (long i = -reach; i <= reach; ++i) {
    for (long j = -reach; j <= reach; ++j) {
      for (long l = -reach; l <= reach; ++l) {
        if (i == 0 && j == 0 && l == 0) continue;
        const Vec3 k{k_spacing * static_cast<double>(i), k_spacing * static_cast<double>(j),
                     k_spacing * static_cast<double>(l)};
        if (dot(k, k) > cutoff_sq) continue;
        const double w = norm(k);
        for (int lambda = 1; lambda <= 2; ++lambda) {
          Mode m;
          m.k = k;
          m.polarization = lambda;
          m.polarization_vector = polarization_vector(k, lambda);
          m.phase = 2.0 * std::numbers::pi * rng.uniform();
          m.amplitude = mode_amplitude(w, k_spacing);
          modes.push_back(m);
        }
      }
    }
  }
  return {k_spacing, cutoff, std::move(modes)};
}

}  // namespace stochkg::vacuum
