#include <cmath>

#include "../experiments.hpp"
#include "../wave_config.hpp"
#include "stochkg/kgwave/conservation.hpp"

namespace stochkg::runner {
namespace {

using namespace stochkg::kgwave;

struct KgParams {
  SpaceTimeGrid grid = SpaceTimeGrid::line(1.0, 2);
  double mass;
  Vec3 packet_k;
  double packet_sigma;
  double packet_centre;
  double t_span;
  std::uint64_t samples;
  double drift_tolerance;
  long mixed_mode;
  Complex mixed_positive;
  Complex mixed_negative;
  double relative_tolerance;
};

std::vector<double> sample_times(const KgParams& p) {
  std::vector<double> t(p.samples);
  for (std::size_t i = 0; i < t.size(); ++i) {
    t[i] = p.t_span * static_cast<double>(i) / static_cast<double>(p.samples - 1);
  }
  return t;
}

void run_kg(const KgParams& p, RunContext& ctx) {
  const auto times = sample_times(p);

  const auto packet = gaussian_packet(p.grid, p.mass, p.packet_k, p.packet_sigma, {p.packet_centre, 0.0, 0.0});
  const auto pure = conservation_report(packet, times, p.drift_tolerance);
  std::ostringstream pure_csv;
  write_conservation_csv(pure_csv, pure);
  ctx.artifact("conservation_packet.csv", pure_csv.str());
  std::ostringstream field;
  write_field_csv(field, synthesize(packet, 0.0));
  ctx.artifact("packet_t0.csv", field.str());
  ctx.verdict(check_at_most("AC-5", "pure positive-energy packet relative norm drift", pure.total_drift,
                            p.drift_tolerance));

  SpectralWave mixed(p.grid, p.mass);
  mixed.add_mode({p.mixed_mode, 0, 0}, p.mixed_positive, +1);
  mixed.add_mode({p.mixed_mode, 0, 0}, p.mixed_negative, -1);
  const auto mix = conservation_report(mixed, times, p.drift_tolerance);
  std::ostringstream mix_csv;
  write_conservation_csv(mix_csv, mix);
  ctx.artifact("conservation_mixed.csv", mix_csv.str());

  const double k = p.grid.wavenumber(0, p.grid.spectral_index({p.mixed_mode, 0, 0}));
  const double expected_frequency = 2.0 * std::sqrt(p.mass * p.mass + k * k);
  const double expected_amplitude = 2.0 * p.grid.volume() * std::abs(p.mixed_positive) * std::abs(p.mixed_negative);
  ctx.verdict(check_at_most("AC-5", "mixed wave per-branch relative norm drift",
                            std::max(mix.positive_drift, mix.negative_drift), p.drift_tolerance));
  ctx.verdict(check_true("AC-5", "mixed wave total norm oscillates", mix.oscillation.has_value()));
  if (mix.oscillation) {
    const auto& fit = *mix.oscillation;
    ctx.measure("mixed oscillation frequency", fit.frequency);
    ctx.measure("mixed oscillation amplitude", std::abs(fit.amplitude));
    ctx.verdict(check_at_most("AC-5", "oscillation frequency relative error against 2 omega",
                              std::abs(fit.frequency - expected_frequency) / expected_frequency, p.relative_tolerance));
    ctx.verdict(check_at_most("AC-5", "oscillation amplitude relative error against 2 V |A+| |A-|",
                              std::abs(std::abs(fit.amplitude) - expected_amplitude) / expected_amplitude,
                              p.relative_tolerance));
  }
}

}  // namespace

Plan configure_kg_conservation(ConfigReader& r) {
  KgParams p;
  p.grid = read_line_grid(r, 20.0, 64);
  p.mass = r.positive("mass_in_inverse_length", 1.0);
  r.section("packet", [&](ConfigReader& s) {
    const auto k = s.triple("k_centre_in_inverse_length", std::array<double, 3>{1.0, 0.0, 0.0});
    if (k[1] != 0.0 || k[2] != 0.0) {
      throw ConfigError(s.path_of("k_centre_in_inverse_length"), "transverse components must be 0 on a line");
    }
    p.packet_k = {k[0], 0.0, 0.0};
    p.packet_sigma = s.positive("k_sigma_in_inverse_length", 0.4);
    p.packet_centre = s.real("x_centre_in_length", 10.0);
  });
  p.t_span = r.positive("t_span_in_length", 20.0);
  p.samples = r.count("samples", 8, 401);
  p.drift_tolerance = r.positive("drift_tolerance", 1e-10);
  r.section("mixed", [&](ConfigReader& s) {
    const auto n = s.mode_numbers("mode_numbers", std::array<long, 3>{2, 0, 0});
    if (n[1] != 0 || n[2] != 0) throw ConfigError(s.path_of("mode_numbers"), "transverse components must be 0 on a line");
    p.mixed_mode = n[0];
    p.mixed_positive = Complex(s.real("positive_re", 1.0), s.real("positive_im", 0.0));
    p.mixed_negative = Complex(s.real("negative_re", 0.3), s.real("negative_im", 0.0));
    if (std::abs(p.mixed_positive) == 0.0 || std::abs(p.mixed_negative) == 0.0) {
      throw ConfigError(s.path(), "both branch amplitudes must be nonzero");
    }
  });
  p.relative_tolerance = r.positive("relative_tolerance", 0.01);
  return [p](RunContext& ctx) { run_kg(p, ctx); };
}

}  // namespace stochkg::runner
