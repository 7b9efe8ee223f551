#include "stochkg/dynamics/trajectory.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace stochkg::dynamics {

IntegrationBlowup::IntegrationBlowup(std::size_t step, double time, long trajectory)
    : std::runtime_error(trajectory < 0
                             ? fmt::format("integration blew up at step {} (t = {})", step, time)
                             : fmt::format("integration blew up in trajectory {} at step {} (t = {})",
                                           trajectory, step, time)),
      step_(step),
      time_(time),
      trajectory_(trajectory) {}

CharacteristicStepper::CharacteristicStepper(const FieldSource& field, const Vec3& x0,
                                             const OnShellMomentum& p0, double charge, double t0,
                                             double dt)
    : field_(&field), mass_(p0.mass()), charge_(charge), t0_(t0), dt_(dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("CharacteristicStepper: dt must be positive");
  y_ = {x0.x, x0.y, x0.z, p0.energy(), p0.spatial().x, p0.spatial().y, p0.spatial().z};
}

CharacteristicStepper::State CharacteristicStepper::rhs(double t, const State& y) const {
  State d{};
  const double p0 = y[3];
  for (int i = 0; i < 3; ++i) d[i] = y[4 + i] / p0;
  if (charge_ == 0.0) return d;

  const vacuum::FieldTensor f = field_->at(FourVector(t, Vec3{y[0], y[1], y[2]}));
  const std::array<double, 4> p{y[3], y[4], y[5], y[6]};
  for (int mu = 0; mu < 4; ++mu) {
    double s = 0.0;
    for (int nu = 0; nu < 4; ++nu) s += f.mixed(mu, nu) * p[nu];
    d[3 + mu] = charge_ * s / p0;
  }
  return d;
}

void CharacteristicStepper::step() {
  const double t = time();
  const double h = dt_;
  auto shifted = [this](const State& k, double scale) {
    State s = y_;
    for (std::size_t i = 0; i < s.size(); ++i) s[i] += scale * k[i];
    return s;
  };
  const State k1 = rhs(t, y_);
  const State k2 = rhs(t + 0.5 * h, shifted(k1, 0.5 * h));
  const State k3 = rhs(t + 0.5 * h, shifted(k2, 0.5 * h));
  const State k4 = rhs(t + h, shifted(k3, h));

  for (std::size_t i = 0; i < y_.size(); ++i) {
    const double inc = (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]) - carry_[i];
    const double next = y_[i] + inc;
    carry_[i] = (next - y_[i]) - inc;
    y_[i] = next;
  }
  ++steps_;

  for (double v : y_) {
    if (!std::isfinite(v)) throw IntegrationBlowup(steps_, time());
  }

  const Vec3 p = momentum();
  last_drift_ = std::abs(shell_deviation(y_[3], p, mass_));
  if (last_drift_ > max_drift_) max_drift_ = last_drift_;
  y_[3] = onshell_energy(p, mass_);
  carry_[3] = 0.0;
}

std::size_t step_count(double span, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("step_count: dt must be positive");
  if (!(span >= 0.0)) throw std::invalid_argument("step_count: span must be non-negative");
  const double ratio = span / dt;
  const double nearest = std::round(ratio);
  if (std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, ratio)) {
    return static_cast<std::size_t>(nearest);
  }
  return static_cast<std::size_t>(std::ceil(ratio));
}

Trajectory integrate_trajectory(const FieldSource& field, const Vec3& x0, const OnShellMomentum& p0,
                                double charge, double t_span, double dt, std::size_t record_every) {
  const std::size_t n = step_count(t_span, dt);
  const double h = n == 0 ? dt : t_span / static_cast<double>(n);
  if (record_every == 0) record_every = 1;

  CharacteristicStepper stepper(field, x0, p0, charge, 0.0, h);
  Trajectory out;
  out.mass = p0.mass();
  out.charge = charge;
  out.dt = h;
  out.samples.reserve(n / record_every + 2);
  out.samples.push_back(stepper.sample());
  for (std::size_t s = 1; s <= n; ++s) {
    stepper.step();
    if (s % record_every == 0 || s == n) out.samples.push_back(stepper.sample());
  }
  out.max_drift = stepper.max_drift();
  return out;
}

}  // namespace stochkg::dynamics
