#include <cmath>

#include "../experiments.hpp"
#include "../parallel.hpp"
#include "stochkg/core/numeric.hpp"
#include "stochkg/vacuum/field.hpp"

namespace stochkg::runner {
namespace {

struct FieldStatsParams {
  double k_spacing;
  double cutoff;
  std::uint64_t draws;
  std::uint64_t probe_pairs;
  double probe_extent;
  double sigma_threshold;
};

struct Stat {
  double mean;
  double standard_error;
};

Stat column_stat(const std::vector<double>& samples) {
  const double n = static_cast<double>(samples.size());
  const double mean = pairwise_sum(samples) / n;
  std::vector<double> sq(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) sq[i] = (samples[i] - mean) * (samples[i] - mean);
  const double var = pairwise_sum(sq) / (n - 1.0);
  return {mean, std::sqrt(var / n)};
}

void run_field_stats(const FieldStatsParams& p, RunContext& ctx) {
  SeededRng lattice_rng(ctx.seed(), 0);
  const auto base = vacuum::sample_modes(p.k_spacing, p.cutoff, lattice_rng);
  ctx.measure("modes", static_cast<double>(base.size()));

  SeededRng probe_rng = SeededRng(ctx.seed(), 0).child(1);
  std::vector<std::pair<FourVector, FourVector>> pairs;
  auto draw_point = [&] {
    FourVector x;
    for (int mu = 0; mu < 4; ++mu) x[mu] = probe_rng.uniform(-p.probe_extent, p.probe_extent);
    return x;
  };
  for (std::uint64_t i = 0; i < p.probe_pairs; ++i) {
    const FourVector x = draw_point();
    const FourVector y = draw_point();
    pairs.emplace_back(x, y);
  }

  // Per draw and pair: 9 products A_i(x) A_j(y), then A(x) and A(y).
  constexpr std::size_t per_pair = 15;
  const std::size_t width = pairs.size() * per_pair;
  std::vector<double> samples(p.draws * width);
  parallel_for(p.draws, ctx.workers(), [&](std::size_t d) {
    SeededRng rng(ctx.seed(), d + 1);
    const auto ms = base.with_resampled_phases(rng);
    double* row = samples.data() + d * width;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const Vec3 ax = vacuum::vector_potential(ms, pairs[k].first);
      const Vec3 ay = vacuum::vector_potential(ms, pairs[k].second);
      double* slot = row + k * per_pair;
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) slot[3 * i + j] = ax[i] * ay[j];
        slot[9 + i] = ax[i];
        slot[12 + i] = ay[i];
      }
    }
  });

  std::vector<double> column(p.draws);
  auto stat_of = [&](std::size_t c) {
    for (std::size_t d = 0; d < p.draws; ++d) column[d] = samples[d * width + c];
    return column_stat(column);
  };

  std::ostringstream probes;
  write_csv_header(probes, {"pair", "x0", "x1", "x2", "x3", "y0", "y1", "y2", "y3"});
  std::ostringstream corr;
  write_csv_header(corr, {"pair", "i", "j", "monte_carlo", "standard_error", "oracle", "z"});
  std::ostringstream mean;
  write_csv_header(mean, {"pair", "point", "component", "mean", "standard_error", "z"});
  double worst_corr = 0.0;
  double worst_mean = 0.0;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto& [x, y] = pairs[k];
    write_csv_row(probes, {std::uint64_t{k}, x[0], x[1], x[2], x[3], y[0], y[1], y[2], y[3]});
    const auto oracle = vacuum::correlation_oracle(base, x, y);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const Stat s = stat_of(k * per_pair + 3 * i + j);
        const double z = (s.mean - oracle[i][j]) / s.standard_error;
        worst_corr = std::max(worst_corr, std::abs(z));
        write_csv_row(corr, {std::uint64_t{k}, std::int64_t{i}, std::int64_t{j}, s.mean, s.standard_error,
                             oracle[i][j], z});
      }
    }
    for (int point = 0; point < 2; ++point) {
      for (int i = 0; i < 3; ++i) {
        const Stat s = stat_of(k * per_pair + 9 + 3 * point + i);
        const double z = s.mean / s.standard_error;
        worst_mean = std::max(worst_mean, std::abs(z));
        write_csv_row(mean, {std::uint64_t{k}, std::string(point == 0 ? "x" : "y"), std::int64_t{i}, s.mean,
                             s.standard_error, z});
      }
    }
  }

  std::ostringstream modes;
  vacuum::write_ndjson(base, modes);
  ctx.artifact("modeset.ndjson", modes.str());
  ctx.artifact("probes.csv", probes.str());
  ctx.artifact("correlation.csv", corr.str());
  ctx.artifact("mean.csv", mean.str());
  ctx.verdict(check_at_most("AC-1", "two-point max |z|", worst_corr, p.sigma_threshold));
  ctx.verdict(check_at_most("AC-1", "mean potential max |z|", worst_mean, p.sigma_threshold));
}

}  // namespace

Plan configure_field_stats(ConfigReader& r) {
  FieldStatsParams p;
  p.k_spacing = r.positive("k_spacing_in_inverse_length", 0.5);
  p.cutoff = r.positive("cutoff_in_inverse_length", 2.0);
  if (p.cutoff < p.k_spacing) {
    throw ConfigError(r.path_of("cutoff_in_inverse_length"), "must not be below k_spacing_in_inverse_length");
  }
  p.draws = r.count("draws", 2, 10000);
  p.probe_pairs = r.count("probe_pairs", 1, 20);
  p.probe_extent = r.positive("probe_extent_in_length", 2.0);
  p.sigma_threshold = r.positive("sigma_threshold", 4.0);
  return [p](RunContext& ctx) { run_field_stats(p, ctx); };
}

}  // namespace stochkg::runner
