#pragma once

#include <functional>
#include <ostream>
#include <vector>

#include "stochkg/lumps/lump.hpp"

namespace stochkg::lumps {

/// Cubic sample grid at one time: points centre - W + j * 2W / N (j = 0..N) per axis,
/// so doubling N keeps every previous point. The finite-difference step equals the spacing.
struct TransportGrid {
  double time = 0.0;
  Vec3 centre;
  double half_width = 6.0;
  std::size_t intervals = 32;
  /// Points closer than this to any excluded worldline are skipped.
  double exclusion_radius = 3.0;

  double spacing() const { return 2.0 * half_width / static_cast<double>(intervals); }
};

struct Worldline {
  Vec3 centre;
  Vec3 velocity;
  Vec3 at(double t) const { return centre + t * velocity; }
};

struct TransportField {
  std::vector<FourVector> points;
  /// p^0 d_t psi + p . grad psi by second-order central differences.
  std::vector<double> residual;
  /// p^0 m |psi| + |p| |grad psi|, the local size of the two terms.
  std::vector<double> scale;
  std::size_t excluded = 0;
};

using SpaceTimeFunction = std::function<double(const FourVector&)>;

TransportField transport_residual_field(const SpaceTimeFunction& psi, const OnShellMomentum& p,
                                        const TransportGrid& grid,
                                        const std::vector<Worldline>& excluded);

struct TransportReport {
  double spacing = 0.0;
  double exclusion_radius = 0.0;
  std::size_t points = 0;
  std::size_t excluded = 0;
  double linf_relative = 0.0;
  double l2_relative = 0.0;
  double linf_absolute = 0.0;
};

TransportReport summarize(const TransportField& f, const TransportGrid& grid);

/// Residual of p^mu d_mu psi = 0 for one lump, with its own momentum, outside the
/// exclusion ball around its worldline. Requires exclusion_radius >= 3 spacings.
TransportReport lump_transport_residual(const LumpSolution& l, const TransportGrid& grid);

/// spacing, exclusion_radius, points, excluded, linf_relative, l2_relative, linf_absolute
void write_transport_csv_header(std::ostream& out);
void write_transport_csv_row(std::ostream& out, const TransportReport& r);

}  // namespace stochkg::lumps
