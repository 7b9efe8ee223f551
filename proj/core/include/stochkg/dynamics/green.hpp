#pragma once

#include <functional>
#include <vector>

#include "stochkg/dynamics/ensemble.hpp"

namespace stochkg::dynamics {

using PhaseSpaceFunction = std::function<double(const FourVector& x, const OnShellMomentum& p)>;

struct GreenResult {
  double value = 0.0;
  /// Contribution of the last Simpson panel pair.
  double tail = 0.0;
  bool truncation_warning = false;
  std::size_t intervals = 0;
};

/// Retarded inverse of p^mu d_mu: integral of g(x - lambda p, p) over lambda in [0, lambda_max]
/// by composite Simpson with the interval count rounded up to an even number so the panel
/// width does not exceed `dlambda`. The result is flagged when the last panel pair carries
/// more than `tail_tolerance` of the total.
GreenResult free_streaming_inverse(const PhaseSpaceFunction& g, const FourVector& x,
                                   const OnShellMomentum& p, double lambda_max,
                                   double dlambda = 0.05, double tail_tolerance = 1e-6);

/// Probability that a free-streaming member of `cloud` lies in histogram bin `flat` at
/// time t. Requires at most one momentum component with nonzero spread; the integral over
/// that component is done by composite Simpson quadrature.
double free_streaming_bin_probability(const GaussianCloud& cloud, double mass,
                                      const std::vector<HistogramAxis>& axes, std::size_t flat,
                                      double t);

}  // namespace stochkg::dynamics
