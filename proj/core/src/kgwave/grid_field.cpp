#include <stdexcept>

#include "stochkg/core/numeric.hpp"
#include "stochkg/kgwave/spectral_wave.hpp"

namespace stochkg::kgwave {

GridField::GridField(SpaceTimeGrid g, double t, std::vector<Complex> v)
    : grid(std::move(g)), time(t), values(std::move(v)) {
  if (values.size() != grid.size()) {
    throw std::invalid_argument("GridField: value count does not match the grid");
  }
}

GridField::GridField(SpaceTimeGrid g, double t) : grid(std::move(g)), time(t), values(grid.size()) {}

double norm(const GridField& f) {
  std::vector<double> sq(f.values.size());
  for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = std::norm(f.values[i]);
  return pairwise_sum(sq) * f.grid.cell_volume();
}

}  // namespace stochkg::kgwave
