#include "stochkg/wigner/transform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace stochkg::wigner {

WignerGrid wigner_transform(const ProductDistribution& pd, double t, const std::vector<double>& x_values,
                            double box_length, const WignerOptions& options) {
  if (pd.spacetime_dim() != 2) throw std::invalid_argument("wigner_transform: needs a 1+1D distribution");
  const std::size_t nz = options.z_points;
  if (nz < 2 || nz % 2 != 0) throw std::invalid_argument("wigner_transform: z_points must be even");
  const double window = options.z_window > 0.0 ? options.z_window : box_length / pd.beta();
  if (!(window > 0.0)) throw std::invalid_argument("wigner_transform: window must be positive");

  const double dz = window / static_cast<double>(nz);
  const auto half = static_cast<long>(nz / 2);

  WignerGrid g;
  g.time = t;
  g.x = x_values;
  g.dp = 2.0 * std::numbers::pi / window;
  for (long n = -half; n < half; ++n) g.p.push_back(g.dp * static_cast<double>(n));
  g.values.assign(g.x.size() * g.p.size(), 0.0);

  std::vector<double> zs(nz);
  for (std::size_t j = 0; j < nz; ++j) zs[j] = -0.5 * window + dz * static_cast<double>(j);

  std::vector<Complex> row(nz);
  for (std::size_t ix = 0; ix < g.x.size(); ++ix) {
    const FourVector x(t, g.x[ix], 0.0, 0.0);
    for (std::size_t j = 0; j < nz; ++j) row[j] = qtilde(pd, x, FourVector(0.0, zs[j], 0.0, 0.0));
    for (std::size_t n = 0; n < g.p.size(); ++n) {
      Complex sum;
      for (std::size_t j = 0; j < nz; ++j) sum += row[j] * std::polar(1.0, g.p[n] * zs[j]);
      sum *= dz / (2.0 * std::numbers::pi);
      g.values[ix * g.p.size() + n] = sum.real();
      g.max_imaginary = std::max(g.max_imaginary, std::abs(sum.imag()));
    }
  }
  return g;
}

void write_wigner_csv(std::ostream& out, const WignerGrid& g) {
  write_csv_header(out, {"x", "p", "Q"});
  for (std::size_t ix = 0; ix < g.x.size(); ++ix) {
    for (std::size_t n = 0; n < g.p.size(); ++n) write_csv_row(out, {g.x[ix], g.p[n], g.at(ix, n)});
  }
}

}  // namespace stochkg::wigner
