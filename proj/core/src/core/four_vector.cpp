#include "stochkg/core/four_vector.hpp"

#include <stdexcept>

namespace stochkg {

FourVector lorentz_boost(const Vec3& v, const FourVector& a) {
  const double speed_sq = dot(v, v);
  if (!(speed_sq < 1.0)) {
    throw std::domain_error("lorentz_boost: |v| must be < 1");
  }
  if (speed_sq == 0.0) return a;

  const double speed = std::sqrt(speed_sq);
  const double gamma = 1.0 / std::sqrt(1.0 - speed_sq);
  const Vec3 n = v / speed;
  const Vec3 s = a.spatial();
  const double parallel = dot(n, s);

  const double time = gamma * (a[0] + speed * parallel);
  const double boosted_parallel = gamma * (parallel + speed * a[0]);
  return {time, s + (boosted_parallel - parallel) * n};
}

double onshell_energy(const Vec3& p, double mass) {
  if (!(mass > 0.0)) throw std::domain_error("onshell_energy: mass must be positive");
  return std::sqrt(mass * mass + dot(p, p));
}

OnShellMomentum::OnShellMomentum(const Vec3& spatial, double mass)
    : spatial_(spatial), mass_(mass), energy_(onshell_energy(spatial, mass)) {}

OnShellMomentum OnShellMomentum::from_velocity(const Vec3& v, double mass) {
  const double speed_sq = dot(v, v);
  if (!(speed_sq < 1.0)) throw std::domain_error("OnShellMomentum: |v| must be < 1");
  const double gamma = 1.0 / std::sqrt(1.0 - speed_sq);
  return {gamma * mass * v, mass};
}

double shell_deviation(double p0, const Vec3& p, double mass) {
  const double e = std::sqrt(mass * mass + dot(p, p));
  return (p0 - e) * (p0 + e) / (mass * mass);
}

}  // namespace stochkg
