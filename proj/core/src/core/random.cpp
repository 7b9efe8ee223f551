#include "stochkg/core/random.hpp"

#include <cmath>
#include <numbers>

namespace stochkg {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_stream_seed(std::uint64_t master_seed, std::uint64_t stream) {
  return splitmix64(master_seed ^ splitmix64(stream + 0x9E3779B97F4A7C15ULL));
}

SeededRng::SeededRng(std::uint64_t master_seed, std::uint64_t stream)
    : master_seed_(master_seed),
      stream_(stream),
      engine_(derive_stream_seed(master_seed, stream)) {}

double SeededRng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double SeededRng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_normal_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_normal_ = r * std::sin(angle);
  has_spare_ = true;
  return r * std::cos(angle);
}

SeededRng SeededRng::child(std::uint64_t sub) const {
  return {derive_stream_seed(master_seed_, stream_), sub};
}

}  // namespace stochkg
