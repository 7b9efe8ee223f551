#include "stochkg/dynamics/nonrelativistic.hpp"

#include <algorithm>
#include <array>

#include "stochkg/dynamics/trajectory.hpp"

namespace stochkg::dynamics {
namespace {

using State = std::array<double, 6>;

State newton_rhs(const FieldSource& field, double mass, double charge, double t, const State& y) {
  const Vec3 e = field.at(FourVector(t, Vec3{y[0], y[1], y[2]})).electric();
  return {y[3] / mass, y[4] / mass, y[5] / mass, charge * e.x, charge * e.y, charge * e.z};
}

}  // namespace

NonrelativisticReport nonrelativistic_consistency(const FieldSource& field, const Vec3& x0,
                                                  const Vec3& v0, double mass, double charge,
                                                  double t_span, double dt) {
  NonrelativisticReport r;
  r.initial_speed = norm(v0);
  r.within_regime = r.initial_speed <= 0.05;

  const std::size_t n = step_count(t_span, dt);
  const double h = n == 0 ? dt : t_span / static_cast<double>(n);
  CharacteristicStepper rel(field, x0, OnShellMomentum::from_velocity(v0, mass), charge, 0.0, h);

  State y{x0.x, x0.y, x0.z, mass * v0.x, mass * v0.y, mass * v0.z};
  double max_dev = 0.0;
  double max_disp = 0.0;
  for (std::size_t s = 0; s < n; ++s) {
    const double t = static_cast<double>(s) * h;
    const State k1 = newton_rhs(field, mass, charge, t, y);
    State tmp;
    for (int i = 0; i < 6; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
    const State k2 = newton_rhs(field, mass, charge, t + 0.5 * h, tmp);
    for (int i = 0; i < 6; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
    const State k3 = newton_rhs(field, mass, charge, t + 0.5 * h, tmp);
    for (int i = 0; i < 6; ++i) tmp[i] = y[i] + h * k3[i];
    const State k4 = newton_rhs(field, mass, charge, t + h, tmp);
    for (int i = 0; i < 6; ++i) y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);

    rel.step();
    const Vec3 xn{y[0], y[1], y[2]};
    max_dev = std::max(max_dev, norm(rel.position() - xn));
    max_disp = std::max(max_disp, norm(xn - x0));
  }
  r.max_absolute_deviation = max_dev;
  r.max_relative_deviation = max_dev == 0.0 ? 0.0 : max_dev / max_disp;
  return r;
}

}  // namespace stochkg::dynamics
