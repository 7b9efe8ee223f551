#include "stochkg/wigner/no_go.hpp"

#include <stdexcept>
#include <vector>

#include "stochkg/core/numeric.hpp"
#include "stochkg/core/text_format.hpp"

namespace stochkg::wigner {

NoGoIntegrals no_go_integral(const kgwave::SpectralWave& w, double t, double beta) {
  if (w.has_negative()) {
    throw std::invalid_argument("no_go_integral: the wave must have positive energy only");
  }
  const auto& grid = w.grid();
  const auto psi = kgwave::synthesize(w, t);
  const auto dt = kgwave::time_derivative(w, t);
  std::vector<double> density(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) density[i] = std::norm(dt.values[i]);
  for (int a = 0; a < grid.dim(); ++a) {
    const auto g = derivative(grid, psi.values, a, DerivativeScheme::spectral);
    for (std::size_t i = 0; i < grid.size(); ++i) density[i] -= std::norm(g[i]);
  }
  const double scale = -4.0 * beta * beta;
  NoGoIntegrals r;
  r.grid = scale * grid.cell_volume() * pairwise_sum(density);

  std::vector<double> weights(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) weights[i] = std::norm(w.positive()[i]);
  r.spectral = scale * w.mass() * w.mass() * grid.volume() * pairwise_sum(weights);
  return r;
}

void write_no_go_csv(std::ostream& out, const NoGoIntegrals& r) {
  write_csv_header(out, {"I_grid", "I_spectral"});
  write_csv_row(out, {r.grid, r.spectral});
}

}  // namespace stochkg::wigner
