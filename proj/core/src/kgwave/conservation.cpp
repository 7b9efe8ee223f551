#include "stochkg/kgwave/conservation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

namespace stochkg::kgwave {
namespace {

struct LinearFit {
  double offset, a, b, rss;
};

double det3(const std::array<std::array<double, 3>, 3>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

LinearFit fit_at(std::span<const double> t, std::span<const double> y, double omega) {
  std::array<std::array<double, 3>, 3> g{};
  std::array<double, 3> r{};
  for (std::size_t i = 0; i < t.size(); ++i) {
    const std::array<double, 3> basis{1.0, std::cos(omega * t[i]), std::sin(omega * t[i])};
    for (int a = 0; a < 3; ++a) {
      r[a] += basis[a] * y[i];
      for (int b = 0; b < 3; ++b) g[a][b] += basis[a] * basis[b];
    }
  }
  const double d = det3(g);
  std::array<double, 3> coef{};
  if (std::abs(d) < 1e-300) {
    coef[0] = r[0] / g[0][0];
  } else {
    for (int c = 0; c < 3; ++c) {
      auto m = g;
      for (int a = 0; a < 3; ++a) m[a][c] = r[a];
      coef[c] = det3(m) / d;
    }
  }
  double rss = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double e =
        y[i] - coef[0] - coef[1] * std::cos(omega * t[i]) - coef[2] * std::sin(omega * t[i]);
    rss += e * e;
  }
  return {coef[0], coef[1], coef[2], rss};
}

double relative_drift(const std::vector<ConservationRow>& rows, double ConservationRow::*field) {
  const double ref = rows.front().*field;
  double worst = 0.0;
  for (const auto& r : rows) worst = std::max(worst, std::abs(r.*field - ref));
  if (ref == 0.0) return worst == 0.0 ? 0.0 : INFINITY;
  return worst / std::abs(ref);
}

}  // namespace

OscillationFit fit_oscillation(std::span<const double> times, std::span<const double> values,
                               double omega_lo, double omega_hi, std::size_t scan_points) {
  if (times.size() != values.size() || times.size() < 4) {
    throw std::invalid_argument("fit_oscillation: need at least four samples");
  }
  if (!(omega_hi > omega_lo) || !(omega_lo > 0.0) || scan_points < 3) {
    throw std::invalid_argument("fit_oscillation: invalid frequency window");
  }
  const double step = (omega_hi - omega_lo) / static_cast<double>(scan_points - 1);
  std::size_t best = 0;
  double best_rss = INFINITY;
  for (std::size_t i = 0; i < scan_points; ++i) {
    const double rss = fit_at(times, values, omega_lo + step * static_cast<double>(i)).rss;
    if (rss < best_rss) {
      best_rss = rss;
      best = i;
    }
  }

  double lo = omega_lo + step * (static_cast<double>(best) - 1.0);
  double hi = omega_lo + step * (static_cast<double>(best) + 1.0);
  lo = std::max(lo, omega_lo);
  hi = std::min(hi, omega_hi);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = fit_at(times, values, c).rss;
  double fd = fit_at(times, values, d).rss;
  for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = fit_at(times, values, c).rss;
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = fit_at(times, values, d).rss;
    }
  }
  const double omega = 0.5 * (lo + hi);
  const LinearFit f = fit_at(times, values, omega);
  OscillationFit out;
  out.frequency = omega;
  out.offset = f.offset;
  out.amplitude = std::hypot(f.a, f.b);
  out.phase = std::atan2(-f.b, f.a);
  out.rms_residual = std::sqrt(f.rss / static_cast<double>(times.size()));
  return out;
}

ConservationReport conservation_report(const SpectralWave& w, std::span<const double> times,
                                       double tolerance) {
  if (times.empty()) throw std::invalid_argument("conservation_report: no times");
  SpectralWave pos(w.grid(), w.mass(), w.positive(), std::vector<Complex>(w.grid().size()));
  SpectralWave neg(w.grid(), w.mass(), std::vector<Complex>(w.grid().size()), w.negative());

  ConservationReport r;
  r.tolerance = tolerance;
  for (double t : times) {
    ConservationRow row{};
    row.t = t;
    row.norm = norm(synthesize(w, t));
    row.norm_positive = norm(synthesize(pos, t));
    row.norm_negative = norm(synthesize(neg, t));
    row.cross = row.norm - row.norm_positive - row.norm_negative;
    r.rows.push_back(row);
  }
  r.positive_drift = relative_drift(r.rows, &ConservationRow::norm_positive);
  r.negative_drift = relative_drift(r.rows, &ConservationRow::norm_negative);
  r.total_drift = relative_drift(r.rows, &ConservationRow::norm);
  r.positive_constant = r.positive_drift < tolerance;
  r.negative_constant = r.negative_drift < tolerance;
  r.total_constant = r.total_drift < tolerance;

  if (!r.total_constant && times.size() >= 4) {
    std::vector<double> ts(times.begin(), times.end());
    std::vector<double> ys;
    for (const auto& row : r.rows) ys.push_back(row.norm);
    const double span = ts.back() - ts.front();
    const double spacing = span / static_cast<double>(ts.size() - 1);
    const double lo = std::numbers::pi / span;
    const double hi = std::numbers::pi / spacing;
    if (hi > lo) r.oscillation = fit_oscillation(ts, ys, lo, hi);
  }
  return r;
}

void write_field_csv(std::ostream& out, const GridField& f) {
  if (f.grid.dim() == 1) {
    write_csv_header(out, {"x", "re", "im"});
  } else {
    write_csv_header(out, {"x", "y", "z", "re", "im"});
  }
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    const Vec3 x = f.grid.position(i);
    if (f.grid.dim() == 1) {
      write_csv_row(out, {x.x, f.values[i].real(), f.values[i].imag()});
    } else {
      write_csv_row(out, {x.x, x.y, x.z, f.values[i].real(), f.values[i].imag()});
    }
  }
}

void write_field_ndjson(std::ostream& out, const GridField& f, const ArtifactMeta& meta) {
  write_ndjson_meta(out, "grid_field", meta);
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    const Vec3 x = f.grid.position(i);
    nlohmann::ordered_json rec;
    rec["schema"] = "stochkg.gridpoint/1";
    rec["t"] = f.time;
    rec["x"] = f.grid.dim() == 1 ? nlohmann::ordered_json::array({x.x})
                                 : nlohmann::ordered_json::array({x.x, x.y, x.z});
    rec["re"] = f.values[i].real();
    rec["im"] = f.values[i].imag();
    out << rec.dump() << '\n';
  }
}

void write_conservation_csv(std::ostream& out, const ConservationReport& r) {
  write_csv_header(out, {"t", "norm", "norm_positive", "norm_negative", "cross"});
  for (const auto& row : r.rows) {
    write_csv_row(out, {row.t, row.norm, row.norm_positive, row.norm_negative, row.cross});
  }
}

}  // namespace stochkg::kgwave
