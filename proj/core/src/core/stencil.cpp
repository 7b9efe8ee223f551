#include "stochkg/core/stencil.hpp"

#include <stdexcept>

namespace stochkg {
namespace {

CentralStencil antisymmetric(int accuracy, std::vector<double> half) {
  CentralStencil s{1, accuracy, {}};
  const int r = static_cast<int>(half.size());
  for (int i = r; i >= 1; --i) s.taps.push_back({-i, -half[i - 1]});
  for (int i = 1; i <= r; ++i) s.taps.push_back({i, half[i - 1]});
  return s;
}

CentralStencil symmetric(int accuracy, double centre, std::vector<double> half) {
  CentralStencil s{2, accuracy, {}};
  const int r = static_cast<int>(half.size());
  for (int i = r; i >= 1; --i) s.taps.push_back({-i, half[i - 1]});
  s.taps.push_back({0, centre});
  for (int i = 1; i <= r; ++i) s.taps.push_back({i, half[i - 1]});
  return s;
}

int slot(int accuracy) {
  switch (accuracy) {
    case 2: return 0;
    case 4: return 1;
    case 6: return 2;
    case 8: return 3;
    default: throw std::invalid_argument("stencil accuracy must be 2, 4, 6 or 8");
  }
}

}  // namespace

const CentralStencil& first_derivative_stencil(int accuracy) {
  static const CentralStencil table[] = {
      antisymmetric(2, {1.0 / 2.0}),
      antisymmetric(4, {2.0 / 3.0, -1.0 / 12.0}),
      antisymmetric(6, {3.0 / 4.0, -3.0 / 20.0, 1.0 / 60.0}),
      antisymmetric(8, {4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0}),
  };
  return table[slot(accuracy)];
}

const CentralStencil& second_derivative_stencil(int accuracy) {
  static const CentralStencil table[] = {
      symmetric(2, -2.0, {1.0}),
      symmetric(4, -5.0 / 2.0, {4.0 / 3.0, -1.0 / 12.0}),
      symmetric(6, -49.0 / 18.0, {3.0 / 2.0, -3.0 / 20.0, 1.0 / 90.0}),
      symmetric(8, -205.0 / 72.0, {8.0 / 5.0, -1.0 / 5.0, 8.0 / 315.0, -1.0 / 560.0}),
  };
  return table[slot(accuracy)];
}

}  // namespace stochkg
