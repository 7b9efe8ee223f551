#include "stochkg/dynamics/green.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "stochkg/core/numeric.hpp"

namespace stochkg::dynamics {

GreenResult free_streaming_inverse(const PhaseSpaceFunction& g, const FourVector& x,
                                   const OnShellMomentum& p, double lambda_max, double dlambda,
                                   double tail_tolerance) {
  if (!(lambda_max > 0.0) || !(dlambda > 0.0)) {
    throw std::invalid_argument("free_streaming_inverse: lambda_max and dlambda must be positive");
  }
  auto n = static_cast<std::size_t>(std::ceil(lambda_max / dlambda - 1e-12));
  n = std::max<std::size_t>(2, n + (n % 2));
  const double h = lambda_max / static_cast<double>(n);
  const FourVector pv = p.four();

  std::vector<double> terms(n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    const double lambda = h * static_cast<double>(j);
    terms[j] = simpson_weight(j, n) * g(x - lambda * pv, p);
  }
  GreenResult r;
  r.intervals = n;
  r.value = h * pairwise_sum(terms);
  const double f_a = g(x - (lambda_max - 2.0 * h) * pv, p);
  const double f_m = g(x - (lambda_max - h) * pv, p);
  const double f_b = g(x - lambda_max * pv, p);
  r.tail = h / 3.0 * (f_a + 4.0 * f_m + f_b);
  r.truncation_warning = std::abs(r.tail) > tail_tolerance * std::abs(r.value) && r.tail != 0.0;
  return r;
}

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double interval_probability(double mean, double sigma, double lo, double hi) {
  if (sigma == 0.0) return (mean >= lo && mean < hi) ? 1.0 : 0.0;
  return normal_cdf((hi - mean) / sigma) - normal_cdf((lo - mean) / sigma);
}

}  // namespace

double free_streaming_bin_probability(const GaussianCloud& cloud, double mass,
                                      const std::vector<HistogramAxis>& axes, std::size_t flat,
                                      double t) {
  std::optional<int> active;
  for (int i = 0; i < 3; ++i) {
    if (cloud.momentum_sigma[i] != 0.0) {
      if (active) throw std::invalid_argument("free_streaming_bin_probability: at most one momentum spread");
      active = i;
    }
  }

  std::vector<std::size_t> idx(axes.size());
  {
    std::size_t rest = flat;
    for (std::size_t a = axes.size(); a-- > 0;) {
      idx[a] = rest % axes[a].bins;
      rest /= axes[a].bins;
    }
  }

  // Integration window for the spread momentum component, clipped by its own bin.
  double p_lo = 0.0;
  double p_hi = 0.0;
  if (active) {
    const double mu = cloud.momentum_mean[*active];
    const double sd = cloud.momentum_sigma[*active];
    p_lo = mu - 10.0 * sd;
    p_hi = mu + 10.0 * sd;
  }

  // Fixed momentum components must fall into their bins.
  for (std::size_t a = 0; a < axes.size(); ++a) {
    const auto c = static_cast<int>(axes[a].coordinate);
    if (c < 3) continue;
    const int comp = c - 3;
    const double lo = axes[a].edge(idx[a]);
    const double hi = lo + axes[a].width();
    if (active && comp == *active) {
      p_lo = std::max(p_lo, lo);
      p_hi = std::min(p_hi, hi);
    } else if (!(cloud.momentum_mean[comp] >= lo && cloud.momentum_mean[comp] < hi)) {
      return 0.0;
    }
  }

  auto position_factor = [&](const Vec3& p) {
    const double energy = onshell_energy(p, mass);
    double prob = 1.0;
    for (std::size_t a = 0; a < axes.size(); ++a) {
      const auto c = static_cast<int>(axes[a].coordinate);
      if (c >= 3) continue;
      const double lo = axes[a].edge(idx[a]);
      const double mean = cloud.position_mean[c] + p[c] / energy * t;
      prob *= interval_probability(mean, cloud.position_sigma[c], lo, lo + axes[a].width());
    }
    return prob;
  };

  if (!active) return position_factor(cloud.momentum_mean);
  if (!(p_hi > p_lo)) return 0.0;

  const double mu = cloud.momentum_mean[*active];
  const double sd = cloud.momentum_sigma[*active];
  const std::size_t n = 2000;
  const double h = (p_hi - p_lo) / static_cast<double>(n);
  std::vector<double> terms(n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    Vec3 p = cloud.momentum_mean;
    p[*active] = p_lo + h * static_cast<double>(j);
    const double z = (p[*active] - mu) / sd;
    const double density = std::exp(-0.5 * z * z) / (sd * std::sqrt(2.0 * std::numbers::pi));
    terms[j] = simpson_weight(j, n) * density * position_factor(p);
  }
  return h * pairwise_sum(terms);
}

}  // namespace stochkg::dynamics
