#include "stochkg/lumps/lump.hpp"

#include <cmath>
#include <numbers>

namespace stochkg::lumps {

SingularityError::SingularityError(long lump_index)
    : std::domain_error(lump_index < 0 ? std::string("evaluation on the singular worldline")
                                       : "evaluation on the singular worldline of lump " +
                                             std::to_string(lump_index)),
      lump_index_(lump_index) {}

double yukawa_static(double r, double m) {
  if (!(r > 0.0)) throw std::domain_error("yukawa_static: r must be positive");
  if (!(m > 0.0)) throw std::domain_error("yukawa_static: m must be positive");
  return std::exp(-m * r) / (4.0 * std::numbers::pi * r);
}

namespace {

double from_interval_sq(double s2, double m) {
  if (!(s2 >= singular_epsilon * singular_epsilon)) throw SingularityError();
  const double s = std::sqrt(s2);
  return std::exp(-m * s) / (4.0 * std::numbers::pi * s);
}

}  // namespace

double lump_evaluate(const LumpSolution& l, const FourVector& x) {
  const double m = l.mass();
  const Vec3 d = x.spatial() - l.centre;
  const Vec3& p = l.momentum.spatial();
  const double pn = norm(p);
  if (pn == 0.0) return from_interval_sq(dot(d, d), m);

  const Vec3 p_hat = p / pn;
  const double gamma_sq = (pn * pn + m * m) / (m * m);
  const double along = dot(d - x.time() * l.velocity(), p_hat);
  const Vec3 transverse = d - dot(d, p_hat) * p_hat;
  return from_interval_sq(gamma_sq * along * along + dot(transverse, transverse), m);
}

double lump_evaluate_axis(const LumpSolution& l, const FourVector& x) {
  const Vec3& p = l.momentum.spatial();
  if (p.y != 0.0 || p.z != 0.0) {
    throw std::invalid_argument("lump_evaluate_axis: momentum must point along the first axis");
  }
  const double m = l.mass();
  const double gamma_sq = (p.x * p.x + m * m) / (m * m);
  const double v = l.velocity().x;
  const double a = x[1] - l.centre.x - v * x.time();
  const double b = x[2] - l.centre.y;
  const double c = x[3] - l.centre.z;
  return from_interval_sq(gamma_sq * a * a + b * b + c * c, m);
}

LumpEnsemble::LumpEnsemble(std::vector<LumpSolution> lumps) : lumps_(std::move(lumps)) {
  if (lumps_.empty()) throw std::invalid_argument("LumpEnsemble: needs at least one lump");
  const double m = lumps_.front().mass();
  for (const auto& l : lumps_) {
    if (l.mass() != m) throw std::invalid_argument("LumpEnsemble: lumps must share the mass");
  }
}

double superpose(const LumpEnsemble& e, const FourVector& x, const OnShellMomentum& p) {
  double sum = 0.0;
  for (std::size_t k = 0; k < e.lumps().size(); ++k) {
    try {
      sum += lump_evaluate(LumpSolution{e.lumps()[k].centre, p}, x);
    } catch (const SingularityError&) {
      throw SingularityError(static_cast<long>(k));
    }
  }
  return sum;
}

double superpose_fixed(const LumpEnsemble& e, const FourVector& x) {
  double sum = 0.0;
  for (std::size_t k = 0; k < e.lumps().size(); ++k) {
    try {
      sum += lump_evaluate(e.lumps()[k], x);
    } catch (const SingularityError&) {
      throw SingularityError(static_cast<long>(k));
    }
  }
  return sum;
}

}  // namespace stochkg::lumps
