#include "stochkg/core/fourier.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>
#include <stdexcept>

namespace stochkg {
namespace {

// Planning is not thread safe in FFTW; execution on distinct buffers is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwBuffer {
  explicit FftwBuffer(std::size_t n)
      : data(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n))) {
    if (data == nullptr) throw std::bad_alloc();
  }
  ~FftwBuffer() { fftw_free(data); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;

  fftw_complex* data;
};

std::vector<Complex> transform(const SpaceTimeGrid& grid, std::span<const Complex> in, int sign) {
  const std::size_t n = grid.size();
  if (in.size() != n) throw std::invalid_argument("fourier: value count does not match grid");

  std::array<int, 3> dims{};
  for (int a = 0; a < grid.dim(); ++a) dims[a] = static_cast<int>(grid.points(a));

  FftwBuffer buffer(n);
  std::copy(in.begin(), in.end(), reinterpret_cast<Complex*>(buffer.data));

  fftw_plan plan = nullptr;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft(grid.dim(), dims.data(), buffer.data, buffer.data, sign, FFTW_ESTIMATE);
  }
  if (plan == nullptr) throw std::runtime_error("fourier: FFTW planning failed");
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }

  const auto* out = reinterpret_cast<const Complex*>(buffer.data);
  return {out, out + n};
}

std::vector<Complex> promote(std::span<const double> values) {
  return {values.begin(), values.end()};
}

std::vector<double> real_part(const std::vector<Complex>& values) {
  std::vector<double> out(values.size());
  std::transform(values.begin(), values.end(), out.begin(), [](Complex c) { return c.real(); });
  return out;
}

}  // namespace

std::vector<Complex> to_spectrum(const SpaceTimeGrid& grid, std::span<const Complex> values) {
  auto out = transform(grid, values, FFTW_FORWARD);
  const double inv = 1.0 / static_cast<double>(grid.size());
  for (auto& c : out) c *= inv;
  return out;
}

std::vector<Complex> from_spectrum(const SpaceTimeGrid& grid,
                                   std::span<const Complex> coefficients) {
  return transform(grid, coefficients, FFTW_BACKWARD);
}

std::vector<Complex> apply_spectral_multiplier(
    const SpaceTimeGrid& grid, std::span<const Complex> values,
    const std::function<Complex(const Vec3&)>& multiplier) {
  auto spectrum = to_spectrum(grid, values);
  for (std::size_t i = 0; i < spectrum.size(); ++i) spectrum[i] *= multiplier(grid.wave_vector(i));
  return from_spectrum(grid, spectrum);
}

std::vector<Complex> derivative(const SpaceTimeGrid& grid, std::span<const Complex> values,
                                int axis, DerivativeScheme scheme) {
  if (axis < 0 || axis >= grid.dim()) throw std::invalid_argument("derivative: bad axis");
  if (scheme == DerivativeScheme::spectral) {
    auto spectrum = to_spectrum(grid, values);
    const long nyquist = -static_cast<long>(grid.points(axis)) / 2;
    for (std::size_t i = 0; i < spectrum.size(); ++i) {
      const auto idx = grid.unflatten(i);
      if (grid.mode_number(axis, idx[axis]) == nyquist) {
        spectrum[i] = 0.0;
      } else {
        spectrum[i] *= Complex(0.0, grid.wavenumber(axis, idx[axis]));
      }
    }
    return from_spectrum(grid, spectrum);
  }

  std::vector<Complex> out(values.size());
  const std::size_t n = grid.points(axis);
  const double inv_2h = 0.5 / grid.spacing(axis);
  for (std::size_t i = 0; i < values.size(); ++i) {
    auto idx = grid.unflatten(i);
    const std::size_t j = idx[axis];
    idx[axis] = (j + 1) % n;
    const Complex up = values[grid.flatten(idx)];
    idx[axis] = (j + n - 1) % n;
    const Complex down = values[grid.flatten(idx)];
    out[i] = (up - down) * inv_2h;
  }
  return out;
}

std::vector<double> derivative(const SpaceTimeGrid& grid, std::span<const double> values,
                               int axis, DerivativeScheme scheme) {
  return real_part(derivative(grid, std::span<const Complex>(promote(values)), axis, scheme));
}

std::vector<Complex> laplacian(const SpaceTimeGrid& grid, std::span<const Complex> values,
                               DerivativeScheme scheme) {
  if (scheme == DerivativeScheme::spectral) {
    return apply_spectral_multiplier(grid, values,
                                     [](const Vec3& k) { return Complex(-dot(k, k), 0.0); });
  }
  std::vector<Complex> out(values.size(), 0.0);
  for (int a = 0; a < grid.dim(); ++a) {
    const std::size_t n = grid.points(a);
    const double inv_h2 = 1.0 / (grid.spacing(a) * grid.spacing(a));
    for (std::size_t i = 0; i < values.size(); ++i) {
      auto idx = grid.unflatten(i);
      const std::size_t j = idx[a];
      idx[a] = (j + 1) % n;
      const Complex up = values[grid.flatten(idx)];
      idx[a] = (j + n - 1) % n;
      const Complex down = values[grid.flatten(idx)];
      out[i] += (up - 2.0 * values[i] + down) * inv_h2;
    }
  }
  return out;
}

std::vector<double> laplacian(const SpaceTimeGrid& grid, std::span<const double> values,
                              DerivativeScheme scheme) {
  return real_part(laplacian(grid, std::span<const Complex>(promote(values)), scheme));
}

}  // namespace stochkg
