#pragma once

// Minkowski geometry in natural units (hbar = c = 1), signature (+,-,-,-).

#include <array>
#include <cmath>
#include <cstddef>

namespace stochkg {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr double& operator[](std::size_t i) { return i == 0 ? x : (i == 1 ? y : z); }
  constexpr double operator[](std::size_t i) const { return i == 0 ? x : (i == 1 ? y : z); }

  constexpr Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr Vec3& operator-=(const Vec3& o) {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  constexpr Vec3& operator*=(double s) {
    x *= s;
    y *= s;
    z *= s;
    return *this;
  }

  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
constexpr Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
constexpr Vec3 operator/(Vec3 a, double s) { return a *= (1.0 / s); }

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

/// Contravariant four-vector; component 0 is time-like.
class FourVector {
 public:
  constexpr FourVector() = default;
  constexpr FourVector(double c0, double c1, double c2, double c3) : c_{c0, c1, c2, c3} {}
  constexpr FourVector(double time, const Vec3& space) : c_{time, space.x, space.y, space.z} {}

  constexpr double& operator[](std::size_t mu) { return c_[mu]; }
  constexpr double operator[](std::size_t mu) const { return c_[mu]; }

  constexpr double time() const { return c_[0]; }
  constexpr Vec3 spatial() const { return {c_[1], c_[2], c_[3]}; }

  constexpr FourVector& operator+=(const FourVector& o) {
    for (std::size_t i = 0; i < 4; ++i) c_[i] += o.c_[i];
    return *this;
  }
  constexpr FourVector& operator-=(const FourVector& o) {
    for (std::size_t i = 0; i < 4; ++i) c_[i] -= o.c_[i];
    return *this;
  }
  constexpr FourVector& operator*=(double s) {
    for (auto& v : c_) v *= s;
    return *this;
  }

  friend constexpr bool operator==(const FourVector&, const FourVector&) = default;

 private:
  std::array<double, 4> c_{};
};

constexpr FourVector operator+(FourVector a, const FourVector& b) { return a += b; }
constexpr FourVector operator-(FourVector a, const FourVector& b) { return a -= b; }
constexpr FourVector operator*(double s, FourVector a) { return a *= s; }
constexpr FourVector operator*(FourVector a, double s) { return a *= s; }

/// Metric g = diag(+1,-1,-1,-1).
constexpr double metric(std::size_t mu) { return mu == 0 ? 1.0 : -1.0; }

/// a^0 b^0 - a.b
constexpr double minkowski_dot(const FourVector& a, const FourVector& b) {
  return a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
}

/// Active boost: maps the rest four-momentum (m, 0) to one moving with velocity `v`.
/// Throws std::domain_error when |v| >= 1.
FourVector lorentz_boost(const Vec3& v, const FourVector& a);

/// sqrt(m^2 + |p|^2); throws std::domain_error when m <= 0.
double onshell_energy(const Vec3& p, double mass);

/// Spatial momentum of a particle with positive mass; the energy is derived so that p.p = m^2.
class OnShellMomentum {
 public:
  OnShellMomentum(const Vec3& spatial, double mass);

  static OnShellMomentum at_rest(double mass) { return {Vec3{}, mass}; }
  /// Momentum of a particle moving with three-velocity `v` (|v| < 1).
  static OnShellMomentum from_velocity(const Vec3& v, double mass);

  const Vec3& spatial() const { return spatial_; }
  double mass() const { return mass_; }
  double energy() const { return energy_; }
  Vec3 velocity() const { return spatial_ / energy_; }
  FourVector four() const { return {energy_, spatial_}; }

 private:
  Vec3 spatial_;
  double mass_;
  double energy_;
};

/// (p0 - E)(p0 + E) / m^2 with E the on-shell energy of the spatial part; zero on shell.
double shell_deviation(double p0, const Vec3& p, double mass);

}  // namespace stochkg
