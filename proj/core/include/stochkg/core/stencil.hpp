#pragma once

#include <vector>

namespace stochkg {

/// Central finite-difference stencil: derivative ~ sum_i weight_i f(x + offset_i h) / h^n.
struct CentralStencil {
  struct Tap {
    int offset;
    double weight;
  };
  int derivative_order;
  int accuracy;
  std::vector<Tap> taps;
};

/// First-derivative stencil of accuracy 2, 4, 6 or 8.
const CentralStencil& first_derivative_stencil(int accuracy);
/// Second-derivative stencil of accuracy 2, 4, 6 or 8.
const CentralStencil& second_derivative_stencil(int accuracy);

}  // namespace stochkg
