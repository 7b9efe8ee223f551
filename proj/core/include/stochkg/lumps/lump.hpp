#pragma once

#include <stdexcept>
#include <vector>

#include "stochkg/core/four_vector.hpp"

namespace stochkg::lumps {

/// Evaluation on (or within epsilon of) a singular worldline.
class SingularityError : public std::domain_error {
 public:
  explicit SingularityError(long lump_index = -1);
  /// Index within a LumpEnsemble, or -1 for a single lump.
  long lump_index() const { return lump_index_; }

 private:
  long lump_index_;
};

/// e^{-m r} / (4 pi r); throws std::domain_error for r <= 0 or m <= 0.
double yukawa_static(double r, double m);

/// Yukawa lump centred at `centre` at t = 0 and moving with momentum p.
struct LumpSolution {
  Vec3 centre;
  OnShellMomentum momentum;

  double mass() const { return momentum.mass(); }
  Vec3 velocity() const { return momentum.velocity(); }
  /// Position of the singular worldline at time t.
  Vec3 worldline(double t) const { return centre + t * velocity(); }
};

inline constexpr double singular_epsilon = 1e-12;

/// Rotation-invariant boosted Yukawa: with d = x - x_k, p_hat = p / |p| and
/// gamma^2 = (p^2 + m^2) / m^2,
///   s^2 = gamma^2 ((d - v t) . p_hat)^2 + d . (I - p_hat p_hat) . d,
/// the value is e^{-m s} / (4 pi s). Throws SingularityError when s^2 < epsilon^2.
double lump_evaluate(const LumpSolution& l, const FourVector& x);

/// The same function written for momentum along the first axis:
///   s^2 = gamma^2 (x1 - x_k1 - v t)^2 + (x2 - x_k2)^2 + (x3 - x_k3)^2.
/// Throws std::invalid_argument when p has transverse components.
double lump_evaluate_axis(const LumpSolution& l, const FourVector& x);

/// Lumps sharing one mass.
class LumpEnsemble {
 public:
  explicit LumpEnsemble(std::vector<LumpSolution> lumps);

  const std::vector<LumpSolution>& lumps() const { return lumps_; }
  double mass() const { return lumps_.front().mass(); }

 private:
  std::vector<LumpSolution> lumps_;
};

/// sum_k psi_{x_k}(x, p): every lump evaluated with the common momentum argument p.
double superpose(const LumpEnsemble& e, const FourVector& x, const OnShellMomentum& p);
/// sum_k psi_{x_k}(x, p_k): every lump with its own momentum.
double superpose_fixed(const LumpEnsemble& e, const FourVector& x);

}  // namespace stochkg::lumps
