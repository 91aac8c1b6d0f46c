#pragma once

#include <cstdint>
#include <vector>

#include "cosparse/types.hpp"

namespace cosparse {

/// Counter-based 64-bit generator.
///
/// Output i of stream (seed, stream_id) is `mix(key + (i + 1) * kGolden)` where
/// `key = mix(seed ^ mix(stream_id + kStreamSalt))` and `mix` is the SplitMix64
/// finalizer. Nothing else is carried between draws except the counter, so any
/// draw can be reproduced from (seed, stream_id, index) on any platform.
///
/// Stream splitting: `split(j)` yields the generator for stream
/// `mix(stream_id ^ (j + 1) * kGolden)` under the same seed. Per-trial streams
/// are obtained as `Rng(master).split(trial)`, so results never depend on the
/// order in which trials are executed.
class Rng {
 public:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
  static constexpr std::uint64_t kStreamSalt = 0xD1B54A32D192ED03ULL;

  explicit Rng(std::uint64_t seed, std::uint64_t stream_id = 0);

  static std::uint64_t mix(std::uint64_t z);

  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi);
  /// Unbiased uniform integer in [0, bound); bound >= 1.
  std::uint64_t uniform_index(std::uint64_t bound);
  /// Standard normal via Box-Muller (both variates are used).
  double normal();
  /// Circularly-symmetric complex normal with E|z|^2 = 1.
  Complex complex_normal();
  /// +1 or -1 with equal probability.
  double sign();

  Rng split(std::uint64_t j) const;

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }
  std::uint64_t counter() const { return counter_; }

  /// Uniformly random k-subset of {0..n-1}, returned sorted.
  std::vector<Index> sample_without_replacement(Index n, Index k);
  /// Uniformly random permutation of {0..n-1} (Fisher-Yates).
  std::vector<Index> permutation(Index n);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace cosparse
