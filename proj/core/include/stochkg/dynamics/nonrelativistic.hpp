#pragma once

#include "stochkg/dynamics/field_source.hpp"

namespace stochkg::dynamics {

struct NonrelativisticReport {
  double initial_speed = 0.0;
  /// max |x_rel(t) - x_newton(t)| / max |x_newton(t) - x0|, zero when both vanish.
  double max_relative_deviation = 0.0;
  double max_absolute_deviation = 0.0;
  /// initial speed <= 0.05, where the deviation is expected to scale as v^2.
  bool within_regime = false;
};

/// Runs the relativistic characteristic and the Newtonian integrator
/// dx/dt = p/m, dp/dt = q E(x, t) side by side with RK4 from the same position and
/// initial velocity, and compares positions at every step.
NonrelativisticReport nonrelativistic_consistency(const FieldSource& field, const Vec3& x0,
                                                  const Vec3& v0, double mass, double charge,
                                                  double t_span, double dt);

}  // namespace stochkg::dynamics
