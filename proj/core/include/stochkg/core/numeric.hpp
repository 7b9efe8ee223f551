#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace stochkg {

/// Pairwise (cascade) summation; the result depends only on the input order.
double pairwise_sum(std::span<const double> values);

/// Least-squares slope of log(y) against log(x); the observed convergence order when
/// x are step sizes and y error norms.
double fitted_order(std::span<const double> steps, std::span<const double> errors);

/// Order estimate from successive halvings: log2(e_i / e_{i+1}) for each pair.
std::vector<double> halving_orders(std::span<const double> errors);

/// Composite Simpson weights for `intervals` (even) panels of width h.
double simpson_weight(std::size_t node, std::size_t intervals);

}  // namespace stochkg
