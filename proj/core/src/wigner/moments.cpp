#include "stochkg/wigner/moments.hpp"

#include <vector>

#include "stochkg/core/stencil.hpp"

namespace stochkg::wigner {
namespace {

// Direction of one finite-difference derivative in the (x, z) product space.
enum class Kind { x, z, u, v };

struct Direction {
  Kind kind;
  int mu;
};

FourVector unit(int mu) {
  FourVector e;
  e[mu] = 1.0;
  return e;
}

/// Composed central differences of Q0 around (x, z), every index raised.
Complex derive(const ProductDistribution& pd, const FourVector& x, const FourVector& z,
               std::span<const Direction> dirs, const StencilOptions& o) {
  if (dirs.empty()) return qtilde(pd, x, z);
  const Direction d = dirs.front();
  const FourVector e = unit(d.mu);
  const double inv_2beta = 0.5 / pd.beta();
  Complex sum;
  for (const auto& tap : first_derivative_stencil(o.accuracy).taps) {
    if (tap.weight == 0.0) continue;
    const double s = tap.offset * o.h;
    FourVector xs = x;
    FourVector zs = z;
    switch (d.kind) {
      case Kind::x: xs += s * e; break;
      case Kind::z: zs += s * e; break;
      case Kind::u:
        xs += (0.5 * s) * e;
        zs += (s * inv_2beta) * e;
        break;
      case Kind::v:
        xs += (0.5 * s) * e;
        zs -= (s * inv_2beta) * e;
        break;
    }
    sum += tap.weight * derive(pd, xs, zs, dirs.subspan(1), o);
  }
  return metric(d.mu) * sum / o.h;
}

Complex derive(const ProductDistribution& pd, const FourVector& x, std::initializer_list<Direction> dirs,
               const StencilOptions& o) {
  const std::vector<Direction> v(dirs);
  return derive(pd, x, FourVector{}, v, o);
}

const Complex i_unit{0.0, 1.0};

}  // namespace

Vector4c first_moment(const ProductDistribution& pd, const FourVector& x, const StencilOptions& o) {
  Vector4c m{};
  for (int mu = 0; mu < pd.spacetime_dim(); ++mu) m[mu] = derive(pd, x, {{Kind::z, mu}}, o) / i_unit;
  return m;
}

Tensor4c second_moment(const ProductDistribution& pd, const FourVector& x, const StencilOptions& o) {
  Tensor4c m{};
  for (int mu = 0; mu < pd.spacetime_dim(); ++mu) {
    for (int nu = mu; nu < pd.spacetime_dim(); ++nu) {
      m[mu][nu] = -derive(pd, x, {{Kind::z, mu}, {Kind::z, nu}}, o);
      m[nu][mu] = m[mu][nu];
    }
  }
  return m;
}

Complex third_moment(const ProductDistribution& pd, const FourVector& x, int mu, int nu, int lambda,
                     const StencilOptions& o) {
  return i_unit * derive(pd, x, {{Kind::z, mu}, {Kind::z, nu}, {Kind::z, lambda}}, o);
}

MomentDecomposition moment_decomposition(const ProductDistribution& pd, const FourVector& x,
                                         const StencilOptions& o) {
  const int n = pd.spacetime_dim();
  const double beta_sq = pd.beta() * pd.beta();
  MomentDecomposition d{};
  d.rho = qtilde(pd, x, FourVector{});
  const Complex q = d.rho;

  const Vector4c first = first_moment(pd, x, o);
  const Tensor4c second = second_moment(pd, x, o);
  Vector4c qx{}, qu{}, qv{};
  for (int mu = 0; mu < n; ++mu) {
    d.mean[mu] = first[mu] / q;
    qx[mu] = derive(pd, x, {{Kind::x, mu}}, o);
    qu[mu] = derive(pd, x, {{Kind::u, mu}}, o);
    qv[mu] = derive(pd, x, {{Kind::v, mu}}, o);
  }
  for (int mu = 0; mu < n; ++mu) {
    for (int nu = 0; nu < n; ++nu) {
      d.second[mu][nu] = second[mu][nu] / q;
      const Complex qxx = derive(pd, x, {{Kind::x, mu}, {Kind::x, nu}}, o);
      d.log_hessian[mu][nu] = qxx / q - qx[mu] * qx[nu] / (q * q);
      const Complex quv = derive(pd, x, {{Kind::u, mu}, {Kind::v, nu}}, o);
      const Complex qvu = derive(pd, x, {{Kind::v, mu}, {Kind::u, nu}}, o);
      const Complex luv = quv / q - qu[mu] * qv[nu] / (q * q);
      const Complex lvu = qvu / q - qv[mu] * qu[nu] / (q * q);
      d.sigma[mu][nu] = 2.0 * beta_sq * (luv + lvu);
    }
  }
  for (int mu = 0; mu < n; ++mu) {
    for (int nu = 0; nu < n; ++nu) {
      d.identity_residual[mu][nu] = d.second[mu][nu] - (d.mean[mu] * d.mean[nu] -
                                                         beta_sq * d.log_hessian[mu][nu] + d.sigma[mu][nu]);
    }
  }
  return d;
}

namespace {

template <typename F>
auto x_divergence(const ProductDistribution& pd, const FourVector& x, double hx, int accuracy, F&& field) {
  using R = decltype(field(x, 0));
  R total{};
  for (int mu = 0; mu < pd.spacetime_dim(); ++mu) {
    R sum{};
    for (const auto& tap : first_derivative_stencil(accuracy).taps) {
      if (tap.weight == 0.0) continue;
      sum += tap.weight * field(x + (tap.offset * hx) * unit(mu), mu);
    }
    total += sum / hx;
  }
  return total;
}

}  // namespace

Complex first_moment_divergence(const ProductDistribution& pd, const FourVector& x, double hx,
                                const StencilOptions& o) {
  return x_divergence(pd, x, hx, o.accuracy, [&](const FourVector& xs, int mu) {
    return derive(pd, xs, {{Kind::z, mu}}, o) / i_unit;
  });
}

Vector4c second_moment_divergence(const ProductDistribution& pd, const FourVector& x, double hx,
                                  const StencilOptions& o) {
  Vector4c out{};
  for (int nu = 0; nu < pd.spacetime_dim(); ++nu) {
    out[nu] = x_divergence(pd, x, hx, o.accuracy, [&](const FourVector& xs, int mu) {
      return -derive(pd, xs, {{Kind::z, mu}, {Kind::z, nu}}, o);
    });
  }
  return out;
}

Complex third_moment_divergence(const ProductDistribution& pd, const FourVector& x, int nu,
                                int lambda, double hx, const StencilOptions& o) {
  return x_divergence(pd, x, hx, o.accuracy, [&](const FourVector& xs, int mu) {
    return third_moment(pd, xs, mu, nu, lambda, o);
  });
}

}  // namespace stochkg::wigner
