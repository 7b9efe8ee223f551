#include "stochkg/wigner/product_distribution.hpp"

#include <cmath>
#include <stdexcept>

#include "stochkg/core/stencil.hpp"

namespace stochkg::wigner {

ProductDistribution::ProductDistribution(const kgwave::SpectralWave& wave, double beta,
                                         bool symmetrize)
    : beta_(beta),
      symmetrize_(symmetrize),
      particle_mass_(wave.mass()),
      spacetime_dim_(1 + wave.grid().dim()) {
  if (!(beta > 0.0)) throw std::invalid_argument("ProductDistribution: beta must be positive");
  append(wave);
}

ProductDistribution& ProductDistribution::add_component(const kgwave::SpectralWave& wave) {
  if (1 + wave.grid().dim() != spacetime_dim_) {
    throw std::invalid_argument("ProductDistribution: components must share the dimension");
  }
  append(wave);
  return *this;
}

ProductDistribution& ProductDistribution::set_particle_mass(double m) {
  if (!(m >= 0.0)) throw std::invalid_argument("ProductDistribution: mass must be non-negative");
  particle_mass_ = m;
  return *this;
}

void ProductDistribution::append(const kgwave::SpectralWave& wave) {
  for (std::size_t i = 0; i < wave.grid().size(); ++i) {
    const Complex a = wave.positive()[i];
    const Complex b = wave.negative()[i];
    if (a == Complex{} && b == Complex{}) continue;
    terms_.push_back({wave.grid().wave_vector(i), wave.frequency(i), a, b});
  }
}

Complex ProductDistribution::psi(const FourVector& x) const {
  const Vec3 r = x.spatial();
  Complex sum;
  for (const Term& t : terms_) {
    const Complex spatial = std::polar(1.0, dot(t.k, r));
    const Complex ep = std::polar(1.0, -t.omega * x.time());
    sum += (t.positive * ep + t.negative * std::conj(ep)) * spatial;
  }
  return sum;
}

Complex qtilde(const ProductDistribution& pd, const FourVector& x, const FourVector& z) {
  const FourVector plus = x + pd.beta() * z;
  const FourVector minus = x - pd.beta() * z;
  const Complex a = pd.psi(plus);
  const Complex b = pd.psi(minus);
  Complex q = std::conj(a) * b;
  if (pd.symmetrized()) q += a * std::conj(b);
  return q;
}

std::vector<XZPoint> xz_points(double t, std::span<const double> x1, std::span<const double> z0,
                               std::span<const double> z1) {
  std::vector<XZPoint> out;
  out.reserve(x1.size() * z0.size() * z1.size());
  for (double x : x1) {
    for (double a : z0) {
      for (double b : z1) out.push_back({FourVector(t, x, 0.0, 0.0), FourVector(a, b, 0.0, 0.0)});
    }
  }
  return out;
}

namespace {

FourVector unit(int mu) {
  FourVector e;
  e[mu] = 1.0;
  return e;
}

}  // namespace

Complex z_derivative(const ProductDistribution& pd, const FourVector& x, const FourVector& z,
                     std::span<const int> axes, double h, int accuracy, bool lowered) {
  if (axes.empty()) return qtilde(pd, x, z);
  const int mu = axes.front();
  const auto& st = first_derivative_stencil(accuracy);
  Complex sum;
  for (const auto& tap : st.taps) {
    if (tap.weight == 0.0) continue;
    const FourVector zs = z + (tap.offset * h) * unit(mu);
    sum += tap.weight * z_derivative(pd, x, zs, axes.subspan(1), h, accuracy, lowered);
  }
  return (lowered ? metric(mu) : 1.0) * sum / h;
}

std::vector<Complex> mixed_derivative_residual(const ProductDistribution& pd,
                                               std::span<const XZPoint> points, double h,
                                               int accuracy) {
  const auto& st = first_derivative_stencil(accuracy);
  std::vector<Complex> out;
  out.reserve(points.size());
  for (const auto& pt : points) {
    Complex total;
    for (int mu = 0; mu < pd.spacetime_dim(); ++mu) {
      Complex sum;
      for (const auto& a : st.taps) {
        if (a.weight == 0.0) continue;
        const FourVector xs = pt.x + (a.offset * h) * unit(mu);
        for (const auto& b : st.taps) {
          if (b.weight == 0.0) continue;
          const FourVector zs = pt.z + (b.offset * h) * unit(mu);
          sum += a.weight * b.weight * qtilde(pd, xs, zs);
        }
      }
      total += metric(mu) * sum / (h * h);
    }
    out.push_back(total);
  }
  return out;
}

std::vector<Complex> mass_shell_residual(const ProductDistribution& pd,
                                         std::span<const XZPoint> points, double h, int accuracy) {
  const auto& st = second_derivative_stencil(accuracy);
  const double m2 = pd.particle_mass() * pd.particle_mass();
  std::vector<Complex> out;
  out.reserve(points.size());
  for (const auto& pt : points) {
    Complex box;
    for (int mu = 0; mu < pd.spacetime_dim(); ++mu) {
      Complex sum;
      for (const auto& tap : st.taps) {
        if (tap.weight == 0.0) continue;
        sum += tap.weight * qtilde(pd, pt.x, pt.z + (tap.offset * h) * unit(mu));
      }
      box += metric(mu) * sum / (h * h);
    }
    out.push_back(box + m2 * qtilde(pd, pt.x, pt.z));
  }
  return out;
}

}  // namespace stochkg::wigner
