#include "wave_config.hpp"

#include <bit>

namespace stochkg::runner {

SpaceTimeGrid read_line_grid(ConfigReader& r, double default_length, std::uint64_t default_points) {
  const double length = r.positive("box_length_in_length", default_length);
  const auto points = r.count("points", 2, default_points);
  if (!std::has_single_bit(points)) throw ConfigError(r.path_of("points"), "must be a power of two");
  return SpaceTimeGrid::line(length, points);
}

kgwave::SpectralWave read_modes(ConfigReader& r, const SpaceTimeGrid& grid, double mass, const Json& fallback) {
  kgwave::SpectralWave w(grid, mass);
  r.each("modes", 1, fallback, [&](ConfigReader& m, std::size_t) {
    const auto n = m.mode_numbers("mode_numbers");
    for (int a = grid.dim(); a < 3; ++a) {
      if (n[a] != 0) throw ConfigError(m.path_of("mode_numbers"), "components beyond the grid dimension must be 0");
    }
    for (int a = 0; a < grid.dim(); ++a) {
      const long half = static_cast<long>(grid.points(a) / 2);
      if (n[a] < -half || n[a] >= half) {
        throw ConfigError(m.path_of("mode_numbers"), "mode number outside the grid's spectral range");
      }
    }
    const double re = m.real("amplitude_re", 1.0);
    const double im = m.real("amplitude_im", 0.0);
    const auto sign = m.choice("energy_sign", {"positive", "negative"}, "positive");
    w.add_mode(n, Complex(re, im), sign == "positive" ? +1 : -1);
  });
  return w;
}

}  // namespace stochkg::runner
