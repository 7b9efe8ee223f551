#pragma once

#include <cstdint>
#include <random>

namespace stochkg {

/// SplitMix64 finalizer; a bijection on 64-bit words.
std::uint64_t splitmix64(std::uint64_t x);

/// Engine seed of stream `stream` under `master_seed`:
///   splitmix64(master_seed ^ splitmix64(stream + 0x9E3779B97F4A7C15)).
/// Every stochastic consumer takes its own stream id, so draws do not depend on how
/// work is scheduled.
std::uint64_t derive_stream_seed(std::uint64_t master_seed, std::uint64_t stream);

/// Deterministic random stream identified by (master seed, stream id).
///
/// Uniform and normal variates are produced from raw 64-bit words with fixed
/// formulas, so sequences are identical across standard library implementations.
class SeededRng {
 public:
  SeededRng(std::uint64_t master_seed, std::uint64_t stream);

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream() const { return stream_; }

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal variate (Box-Muller, both outputs used).
  double normal();

  /// Independent sub-stream keyed on this stream's identity and `sub`.
  SeededRng child(std::uint64_t sub) const;

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace stochkg
