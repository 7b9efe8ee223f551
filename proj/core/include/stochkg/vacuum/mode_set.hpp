#pragma once

#include <cstddef>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "stochkg/core/four_vector.hpp"
#include "stochkg/core/random.hpp"

namespace stochkg::vacuum {

/// Raised for mode-lattice parameters that admit no modes.
class ConfigurationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// One transverse plane-wave mode of the random zero-point field.
struct Mode {
  Vec3 k;
  int polarization = 1;  // 1 or 2
  Vec3 polarization_vector;
  double phase = 0.0;  // in [0, 2 pi)
  double amplitude = 0.0;

  double frequency() const { return norm(k); }
};

/// h(k) with pi^2 h^2 = w / 2.
double zero_point_h(double frequency);

/// sqrt(dk^3) h(k) / w: amplitude of one lattice mode such that the discrete phase
/// average of A_i(x) A_j(y) converges to the continuum spectrum as dk -> 0.
double mode_amplitude(double frequency, double k_spacing);

/// Deterministic transverse basis: start from the coordinate axis least aligned with k,
/// Gram-Schmidt it against k for polarization 1, then k_hat x e1 for polarization 2.
Vec3 polarization_vector(const Vec3& k, int polarization);

/// Finite lattice k = dk * (i, j, l), 0 < |k| <= cutoff, two polarizations per site.
class ModeSet {
 public:
  ModeSet(double k_spacing, double cutoff, std::vector<Mode> modes);

  double k_spacing() const { return k_spacing_; }
  double cutoff() const { return cutoff_; }
  const std::vector<Mode>& modes() const { return modes_; }
  std::size_t size() const { return modes_.size(); }

  /// Same lattice, fresh i.i.d. phases drawn in mode order.
  ModeSet with_resampled_phases(SeededRng& rng) const;

  friend bool operator==(const ModeSet&, const ModeSet&);

 private:
  double k_spacing_;
  double cutoff_;
  std::vector<Mode> modes_;
};

/// Lattice sites are enumerated with i, then j, then l ascending; polarization 1 precedes 2.
/// Phases are drawn from `rng` in that order.
ModeSet sample_modes(double k_spacing, double cutoff, SeededRng& rng);

/// NDJSON replay format: one header record followed by one record per mode.
///   {"schema":"stochkg.modeset/1","k_spacing":..,"cutoff":..,"modes":N}
///   {"schema":"stochkg.mode/1","k":[kx,ky,kz],"lambda":1,"theta":..,"amplitude":..}
/// Polarization vectors are rebuilt from k on read.
void write_ndjson(const ModeSet& modes, std::ostream& out);
ModeSet read_ndjson(std::istream& in);

}  // namespace stochkg::vacuum
