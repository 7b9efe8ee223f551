#pragma once

#include <array>

#include "stochkg/wigner/product_distribution.hpp"

namespace stochkg::wigner {

using Vector4c = std::array<Complex, 4>;
using Tensor4c = std::array<std::array<Complex, 4>, 4>;

/// Step and stencil accuracy of the finite differences behind the moment fields.
struct StencilOptions {
  double h = 1e-2;
  int accuracy = 4;
};

/// rho <p^mu> = (1/i) dQ0/dz_mu at z = 0.
Vector4c first_moment(const ProductDistribution& pd, const FourVector& x, const StencilOptions& o = {});
/// rho <p^mu p^nu> = -d^2 Q0 / dz_mu dz_nu at z = 0.
Tensor4c second_moment(const ProductDistribution& pd, const FourVector& x, const StencilOptions& o = {});
/// rho <p^mu p^nu p^lambda> = i d^3 Q0 / dz_mu dz_nu dz_lambda at z = 0.
Complex third_moment(const ProductDistribution& pd, const FourVector& x, int mu, int nu, int lambda,
                     const StencilOptions& o = {});

/// Terms of <p^mu p^nu> = <p^mu><p^nu> - beta^2 d^mu d^nu ln Q0 + sigma^{mu nu} at z = 0.
///
/// sigma comes from the mixed derivatives of ln Q0 in the coordinates u = x + beta z and
/// v = x - beta z: sigma^{mu nu} = 2 beta^2 (d_u^mu d_v^nu + d_v^mu d_u^nu) ln Q0, which vanishes
/// whenever ln Q0 separates into a function of u plus a function of v.
struct MomentDecomposition {
  Complex rho;
  Vector4c mean;          // <p^mu>
  Tensor4c second;        // <p^mu p^nu>
  Tensor4c log_hessian;   // d^mu d^nu ln Q0 in x
  Tensor4c sigma;
  /// second - (mean mean - beta^2 log_hessian + sigma)
  Tensor4c identity_residual;
};

MomentDecomposition moment_decomposition(const ProductDistribution& pd, const FourVector& x,
                                         const StencilOptions& o = {});

/// d_mu (rho <p^mu>) by central differences of step hx in x.
Complex first_moment_divergence(const ProductDistribution& pd, const FourVector& x, double hx,
                                const StencilOptions& o = {});
/// d_mu (rho <p^mu p^nu>) for every nu.
Vector4c second_moment_divergence(const ProductDistribution& pd, const FourVector& x, double hx,
                                  const StencilOptions& o = {});
/// d_mu (rho <p^mu p^nu p^lambda>) for one (nu, lambda).
Complex third_moment_divergence(const ProductDistribution& pd, const FourVector& x, int nu,
                                int lambda, double hx, const StencilOptions& o = {});

}  // namespace stochkg::wigner
