#include "stochkg/core/numeric.hpp"

#include <cmath>
#include <stdexcept>

namespace stochkg {

double pairwise_sum(std::span<const double> values) {
  constexpr std::size_t block = 32;
  if (values.size() <= block) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

double fitted_order(std::span<const double> steps, std::span<const double> errors) {
  if (steps.size() != errors.size() || steps.size() < 2) {
    throw std::invalid_argument("fitted_order: need at least two (step, error) pairs");
  }
  const auto n = static_cast<double>(steps.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const double x = std::log(steps[i]);
    const double y = std::log(errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<double> halving_orders(std::span<const double> errors) {
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
    out.push_back(std::log2(errors[i] / errors[i + 1]));
  }
  return out;
}

double simpson_weight(std::size_t node, std::size_t intervals) {
  if (node == 0 || node == intervals) return 1.0 / 3.0;
  return node % 2 == 1 ? 4.0 / 3.0 : 2.0 / 3.0;
}

}  // namespace stochkg
