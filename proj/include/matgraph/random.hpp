#pragma once

#include <cstdint>
#include <random>

namespace matgraph {

/// Reproducible random source: std::mt19937_64 (bit-exact by the standard)
/// with fixed, portable transforms for every derived distribution. The
/// std::*_distribution adaptors are implementation-defined, so they are not used.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  bool bernoulli(double prob) { return uniform() < prob; }

  /// Standard normal by the Marsaglia polar method; the spare deviate is cached.
  double normal();

  /// Unit-rate exponential.
  double exponential();

  std::uint64_t bits() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// SplitMix64 finalizer; used to derive independent stream seeds.
[[nodiscard]] std::uint64_t mix_seed(std::uint64_t x);

/// Seed for stream `stream` of replicate `replicate` under `master`. Replicates
/// depend only on (master, replicate, stream), never on execution order.
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t master, std::uint64_t replicate,
                                        std::uint64_t stream = 0);

}  // namespace matgraph
