#include "stochkg/vacuum/field.hpp"

#include <cmath>

namespace stochkg::vacuum {
namespace {

double mode_phase(const Mode& m, const FourVector& x) {
  return dot(m.k, x.spatial()) - m.frequency() * x.time() + m.phase;
}

}  // namespace

FieldTensor FieldTensor::from_fields(const Vec3& e, const Vec3& b) {
  FieldTensor t;
  for (int i = 0; i < 3; ++i) {
    t.f_[0][i + 1] = e[i];
    t.f_[i + 1][0] = -e[i];
  }
  t.f_[1][2] = -b.z;
  t.f_[2][1] = b.z;
  t.f_[2][3] = -b.x;
  t.f_[3][2] = b.x;
  t.f_[3][1] = -b.y;
  t.f_[1][3] = b.y;
  return t;
}

Vec3 vector_potential(const ModeSet& ms, const FourVector& x) {
  Vec3 a;
  for (const Mode& m : ms.modes()) a += (m.amplitude * std::sin(mode_phase(m, x))) * m.polarization_vector;
  return a;
}

FieldTensor field_tensor(const ModeSet& ms, const FourVector& x) {
  Vec3 e;
  Vec3 b;
  for (const Mode& m : ms.modes()) {
    const double c = m.amplitude * std::cos(mode_phase(m, x));
    e += (c * m.frequency()) * m.polarization_vector;
    b += c * cross(m.k, m.polarization_vector);
  }
  return FieldTensor::from_fields(e, b);
}

FourVector force_per_charge(const FieldTensor& f, const OnShellMomentum& p) {
  const FourVector pv = p.four();
  FourVector out;
  for (int mu = 0; mu < 4; ++mu) {
    double s = 0.0;
    for (int nu = 0; nu < 4; ++nu) s += f.mixed(mu, nu) * pv[nu];
    out[mu] = s / p.mass();
  }
  return out;
}

FourVector force_per_charge(const ModeSet& ms, const FourVector& x, const OnShellMomentum& p) {
  return force_per_charge(field_tensor(ms, x), p);
}

Matrix3 correlation_oracle(const ModeSet& ms, const FourVector& x, const FourVector& y) {
  Matrix3 c{};
  const FourVector d = x - y;
  for (const Mode& m : ms.modes()) {
    const double w = 0.5 * m.amplitude * m.amplitude *
                     std::cos(dot(m.k, d.spatial()) - m.frequency() * d.time());
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) c[i][j] += w * m.polarization_vector[i] * m.polarization_vector[j];
    }
  }
  return c;
}

}  // namespace stochkg::vacuum
