#pragma once

#include <array>

#include "stochkg/core/four_vector.hpp"
#include "stochkg/vacuum/mode_set.hpp"

namespace stochkg::vacuum {

using Matrix3 = std::array<std::array<double, 3>, 3>;

/// Covariant field strength F_{mu nu} at one space-time point.
///
/// Built from E and B as F_{0i} = E_i, F_{ij} = -eps_{ijk} B_k; the lower triangle is the
/// exact negation of the upper one.
class FieldTensor {
 public:
  FieldTensor() = default;
  static FieldTensor from_fields(const Vec3& e, const Vec3& b);

  double operator()(int mu, int nu) const { return f_[mu][nu]; }
  /// F^mu_nu = g^{mu mu} F_{mu nu}.
  double mixed(int mu, int nu) const { return metric(mu) * f_[mu][nu]; }

  Vec3 electric() const { return {f_[0][1], f_[0][2], f_[0][3]}; }
  Vec3 magnetic() const { return {-f_[2][3], -f_[3][1], -f_[1][2]}; }

 private:
  std::array<std::array<double, 4>, 4> f_{};
};

/// A(x) = sum a eps sin(k.x - w t + theta); the scalar potential vanishes (radiation gauge).
Vec3 vector_potential(const ModeSet& ms, const FourVector& x);

/// E = -dA/dt and B = curl A from the closed-form derivatives of each mode.
FieldTensor field_tensor(const ModeSet& ms, const FourVector& x);

/// f^mu = F^mu_nu p^nu / m. Orthogonal to p for any antisymmetric F.
FourVector force_per_charge(const FieldTensor& f, const OnShellMomentum& p);
FourVector force_per_charge(const ModeSet& ms, const FourVector& x, const OnShellMomentum& p);

/// Phase-ensemble mean of A_i(x) A_j(y) for this lattice.
Matrix3 correlation_oracle(const ModeSet& ms, const FourVector& x, const FourVector& y);

}  // namespace stochkg::vacuum
