#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "stochkg/dynamics/field_source.hpp"

namespace stochkg::dynamics {

/// Non-finite state during integration.
class IntegrationBlowup : public std::runtime_error {
 public:
  IntegrationBlowup(std::size_t step, double time, long trajectory = -1);

  std::size_t step() const { return step_; }
  double time() const { return time_; }
  /// Ensemble index of the failing trajectory, or -1 outside an ensemble.
  long trajectory() const { return trajectory_; }

 private:
  std::size_t step_;
  double time_;
  long trajectory_;
};

struct TrajectorySample {
  double t = 0.0;
  Vec3 x;
  Vec3 p;
  double energy = 0.0;  // on-shell p0 after re-projection
};

struct Trajectory {
  double mass = 0.0;
  double charge = 0.0;
  double dt = 0.0;
  std::vector<TrajectorySample> samples;
  /// max |p.p - m^2| / m^2 over all steps, measured before p0 is re-projected.
  double max_drift = 0.0;
};

/// Integration of one characteristic in lab time:
///   dx/dt = p / p0,   dp^mu/dt = q F^mu_nu p^nu / p0
/// with classical RK4 on (x, p0, p). After every step the pre-projection shell drift is
/// recorded and p0 is reset to the on-shell energy. State updates are compensated
/// (Kahan) and times are computed as t0 + n dt, so free streaming is exact to rounding.
class CharacteristicStepper {
 public:
  CharacteristicStepper(const FieldSource& field, const Vec3& x0, const OnShellMomentum& p0,
                        double charge, double t0, double dt);

  void step();

  double time() const { return t0_ + static_cast<double>(steps_) * dt_; }
  std::size_t steps() const { return steps_; }
  Vec3 position() const { return {y_[0], y_[1], y_[2]}; }
  Vec3 momentum() const { return {y_[4], y_[5], y_[6]}; }
  double energy() const { return y_[3]; }
  double last_drift() const { return last_drift_; }
  double max_drift() const { return max_drift_; }
  TrajectorySample sample() const { return {time(), position(), momentum(), energy()}; }

 private:
  using State = std::array<double, 7>;
  State rhs(double t, const State& y) const;

  const FieldSource* field_;
  double mass_;
  double charge_;
  double t0_;
  double dt_;
  std::size_t steps_ = 0;
  State y_{};
  State carry_{};
  double last_drift_ = 0.0;
  double max_drift_ = 0.0;
};

/// Number of steps covering `span` with step close to `dt`. The step is shrunk so that
/// an integer number of steps lands exactly on the end time.
std::size_t step_count(double span, double dt);

/// Integrates from t = 0 to t = `t_span`; every `record_every`-th state and the final one
/// are kept. Throws std::invalid_argument for dt <= 0 or t_span < 0 and IntegrationBlowup
/// for non-finite states.
Trajectory integrate_trajectory(const FieldSource& field, const Vec3& x0, const OnShellMomentum& p0,
                                double charge, double t_span, double dt,
                                std::size_t record_every = 1);

}  // namespace stochkg::dynamics
