#include "stochkg/lumps/packet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stochkg/core/numeric.hpp"
#include "stochkg/core/text_format.hpp"
#include "stochkg/kgwave/spectral_wave.hpp"

namespace stochkg::lumps {
namespace {

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

PacketReport packet_compare(const LumpSolution& l, double bandwidth, const PacketOptions& o) {
  if (!(bandwidth > 0.0)) throw std::invalid_argument("packet_compare: bandwidth must be positive");
  if (o.samples < 2) throw std::invalid_argument("packet_compare: need at least two samples");

  PacketReport r;
  r.p_bar = norm(l.momentum.spatial());
  r.mass = l.mass();
  r.bandwidth = bandwidth;
  r.lump_velocity = r.p_bar / std::sqrt(r.p_bar * r.p_bar + r.mass * r.mass);
  r.feasible = bandwidth > r.mass;

  const auto grid = SpaceTimeGrid::line(o.box_length, o.points);
  const double x0 = o.start_fraction * o.box_length;
  // The coefficient envelope exp(-(k - p)^2 / (4 s^2)) gives |psi_hat|^2 a standard deviation s.
  const auto wave = kgwave::gaussian_packet(grid, r.mass, Vec3{r.p_bar, 0.0, 0.0}, bandwidth,
                                            Vec3{x0, 0.0, 0.0});
  const double duration = o.duration > 0.0 ? o.duration
                                            : 0.375 * o.box_length / std::max(r.lump_velocity, 1e-3);

  std::vector<double> ts;
  std::vector<double> centres;
  std::vector<double> widths;
  std::vector<double> w(grid.size());
  std::vector<double> wx(grid.size());
  std::vector<double> wxx(grid.size());
  for (std::size_t s = 0; s < o.samples; ++s) {
    const double t = duration * static_cast<double>(s) / static_cast<double>(o.samples - 1);
    const auto psi = kgwave::synthesize(wave, t);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double x = grid.coordinate(0, i);
      w[i] = std::norm(psi.values[i]);
      wx[i] = w[i] * x;
      wxx[i] = w[i] * x * x;
    }
    const double total = pairwise_sum(w);
    const double mean = pairwise_sum(wx) / total;
    const double var = std::max(0.0, pairwise_sum(wxx) / total - mean * mean);
    ts.push_back(t);
    centres.push_back(mean);
    widths.push_back(std::sqrt(var));
    r.series.push_back({t, mean, std::sqrt(var)});
  }
  r.centroid_velocity = slope(ts, centres);
  r.spreading_rate = slope(ts, widths);
  r.relative_velocity_error = r.lump_velocity > 0.0
                                  ? std::abs(r.centroid_velocity - r.lump_velocity) / r.lump_velocity
                                  : std::abs(r.centroid_velocity);
  return r;
}

void write_packet_csv(std::ostream& out, const PacketReport& r) {
  write_csv_header(out, {"t", "centroid", "width"});
  for (const auto& s : r.series) write_csv_row(out, {s.t, s.centroid, s.width});
}

}  // namespace stochkg::lumps
