#include "stochkg/lumps/transport.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stochkg/core/numeric.hpp"
#include "stochkg/core/text_format.hpp"

namespace stochkg::lumps {

TransportField transport_residual_field(const SpaceTimeFunction& psi, const OnShellMomentum& p,
                                        const TransportGrid& grid,
                                        const std::vector<Worldline>& excluded) {
  if (grid.intervals == 0 || !(grid.half_width > 0.0)) {
    throw std::invalid_argument("transport_residual_field: empty grid");
  }
  const double h = grid.spacing();
  const double p0 = p.energy();
  const Vec3 pv = p.spatial();
  const double pn = norm(pv);
  const double m = p.mass();
  const std::size_t n = grid.intervals + 1;

  TransportField f;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        const Vec3 r = grid.centre + Vec3{-grid.half_width + h * static_cast<double>(i),
                                          -grid.half_width + h * static_cast<double>(j),
                                          -grid.half_width + h * static_cast<double>(k)};
        bool skip = false;
        for (const auto& w : excluded) {
          if (norm(r - w.at(grid.time)) < grid.exclusion_radius) {
            skip = true;
            break;
          }
        }
        if (skip) {
          ++f.excluded;
          continue;
        }
        const FourVector x(grid.time, r);
        const double dt = (psi(x + FourVector(h, 0, 0, 0)) - psi(x - FourVector(h, 0, 0, 0))) / (2.0 * h);
        Vec3 grad;
        for (int a = 0; a < 3; ++a) {
          FourVector e;
          e[a + 1] = h;
          grad[a] = (psi(x + e) - psi(x - e)) / (2.0 * h);
        }
        f.points.push_back(x);
        f.residual.push_back(p0 * dt + dot(pv, grad));
        f.scale.push_back(p0 * m * std::abs(psi(x)) + pn * norm(grad));
      }
    }
  }
  return f;
}

TransportReport summarize(const TransportField& f, const TransportGrid& grid) {
  TransportReport r;
  r.spacing = grid.spacing();
  r.exclusion_radius = grid.exclusion_radius;
  r.points = f.points.size();
  r.excluded = f.excluded;
  std::vector<double> sq;
  sq.reserve(f.residual.size());
  for (std::size_t i = 0; i < f.residual.size(); ++i) {
    const double rel = f.scale[i] > 0.0 ? std::abs(f.residual[i]) / f.scale[i] : 0.0;
    r.linf_relative = std::max(r.linf_relative, rel);
    r.linf_absolute = std::max(r.linf_absolute, std::abs(f.residual[i]));
    sq.push_back(rel * rel);
  }
  if (!sq.empty()) r.l2_relative = std::sqrt(pairwise_sum(sq) / static_cast<double>(sq.size()));
  return r;
}

TransportReport lump_transport_residual(const LumpSolution& l, const TransportGrid& grid) {
  if (grid.exclusion_radius < 3.0 * grid.spacing() * (1.0 - 1e-12)) {
    throw std::invalid_argument("lump_transport_residual: exclusion radius below three spacings");
  }
  const auto field = transport_residual_field(
      [&l](const FourVector& x) { return lump_evaluate(l, x); }, l.momentum, grid,
      {Worldline{l.centre, l.velocity()}});
  return summarize(field, grid);
}

void write_transport_csv_header(std::ostream& out) {
  write_csv_header(out, {"spacing", "exclusion_radius", "points", "excluded", "linf_relative",
                         "l2_relative", "linf_absolute"});
}

void write_transport_csv_row(std::ostream& out, const TransportReport& r) {
  write_csv_row(out, {r.spacing, r.exclusion_radius, static_cast<std::uint64_t>(r.points),
                      static_cast<std::uint64_t>(r.excluded), r.linf_relative, r.l2_relative,
                      r.linf_absolute});
}

}  // namespace stochkg::lumps
