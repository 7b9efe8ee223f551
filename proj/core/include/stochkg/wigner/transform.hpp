#pragma once

#include <ostream>
#include <vector>

#include "stochkg/core/text_format.hpp"
#include "stochkg/wigner/product_distribution.hpp"

namespace stochkg::wigner {

struct WignerOptions {
  /// Number of z samples (even).
  std::size_t z_points = 256;
  /// Width of the z window; 0 selects L / beta, on which 2 beta k lands exactly on a
  /// momentum bin for every lattice wave number k.
  double z_window = 0.0;
};

/// Equal-time phase-space table Q(x, p) on x_values times the momentum bins p_n.
struct WignerGrid {
  double time = 0.0;
  std::vector<double> x;
  std::vector<double> p;      // ascending
  std::vector<double> values; // row-major: values[i * p.size() + n]
  double dp = 0.0;
  /// max |Im Q| before the real part was kept.
  double max_imaginary = 0.0;

  double at(std::size_t ix, std::size_t ip) const { return values[ix * p.size() + ip]; }
};

/// Q(x, p_n) = (dz / 2 pi) sum_j Q0(x, (0, z_j)) exp(i p_n z_j) over the centred window,
/// the discrete inverse of Q0(x, z) = int dp / 2 pi Q(x, p) exp(i p.z) at z0 = 0, so that
/// sum_n Q(x, p_n) dp = Q0(x, 0). Needs a 1+1 dimensional distribution.
WignerGrid wigner_transform(const ProductDistribution& pd, double t, const std::vector<double>& x_values,
                            double box_length, const WignerOptions& options = {});

/// x, p, Q per cell.
void write_wigner_csv(std::ostream& out, const WignerGrid& g);

}  // namespace stochkg::wigner
