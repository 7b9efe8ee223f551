#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "stochkg/core/text_format.hpp"
#include "stochkg/kgwave/spectral_wave.hpp"

namespace stochkg::kgwave {

/// offset + amplitude cos(omega t + phase), fitted by least squares.
struct OscillationFit {
  double frequency = 0.0;
  double amplitude = 0.0;
  double phase = 0.0;
  double offset = 0.0;
  double rms_residual = 0.0;
};

/// For each trial omega the model is linear in (offset, cos, sin) and solved exactly; omega
/// is located by a scan of `scan_points` values over [omega_lo, omega_hi] followed by
/// golden-section refinement of the best bracket.
OscillationFit fit_oscillation(std::span<const double> times, std::span<const double> values,
                               double omega_lo, double omega_hi, std::size_t scan_points = 4000);

struct ConservationRow {
  double t;
  double norm;
  double norm_positive;
  double norm_negative;
  /// norm - norm_positive - norm_negative
  double cross;
};

struct ConservationReport {
  std::vector<ConservationRow> rows;
  double tolerance = 0.0;
  /// max_t |N(t) - N(t0)| / N(t0) for each branch and the total (0 for a zero norm).
  double positive_drift = 0.0;
  double negative_drift = 0.0;
  double total_drift = 0.0;
  bool positive_constant = true;
  bool negative_constant = true;
  bool total_constant = true;
  /// Present when the total norm varies beyond tolerance.
  std::optional<OscillationFit> oscillation;
};

/// Norm of the wave and of its two energy branches at each time. The oscillation fit
/// searches frequencies up to the sampling Nyquist limit of `times` (uniform spacing).
ConservationReport conservation_report(const SpectralWave& w, std::span<const double> times,
                                       double tolerance = 1e-10);

/// x (and y, z in 3D), re, im per grid point.
void write_field_csv(std::ostream& out, const GridField& f);
/// Meta record, then {"schema":"stochkg.gridpoint/1","x":[..],"re":..,"im":..} per point.
void write_field_ndjson(std::ostream& out, const GridField& f, const ArtifactMeta& meta);
/// t, norm, norm_positive, norm_negative, cross
void write_conservation_csv(std::ostream& out, const ConservationReport& r);

}  // namespace stochkg::kgwave
