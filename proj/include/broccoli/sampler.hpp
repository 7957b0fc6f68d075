#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "broccoli/state.hpp"

namespace broccoli {

/// xoshiro256** (Blackman & Vigna), state seeded from SplitMix64(seed).
///
/// Written out here rather than taken from <random> so that sampled initial
/// states are identical across platforms and standard libraries:
///
///   splitmix64: z = (x += 0x9e3779b97f4a7c15);
///               z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9;
///               z = (z ^ (z >> 27)) * 0x94d049bb133111eb;
///               return z ^ (z >> 31);
///   next:       r = rotl(s1 * 5, 7) * 9; t = s1 << 17;
///               s2 ^= s0; s3 ^= s1; s1 ^= s2; s0 ^= s3; s2 ^= t;
///               s3 = rotl(s3, 45); return r;
///   uniform01:  (next() >> 11) * 2^-53
class Xoshiro256 {
 public:
  explicit Xoshiro256(std::uint64_t seed);

  std::uint64_t next();
  /// Uniform double in [0, 1).
  double uniform01();

 private:
  std::array<std::uint64_t, 4> s_{};
};

/// Closed sampling range; lower == upper is allowed and yields a constant.
struct SamplingInterval {
  double lower = 0.0;
  double upper = 0.0;
};

/// Draws initial states uniformly per dimension: lower + (upper - lower) * u.
class InitialStateSampler {
 public:
  InitialStateSampler(std::uint64_t seed, std::vector<SamplingInterval> ranges);

  StateVector next();

  std::uint64_t seed() const { return seed_; }
  const std::vector<SamplingInterval>& ranges() const { return ranges_; }

 private:
  std::uint64_t seed_;
  std::vector<SamplingInterval> ranges_;
  Xoshiro256 rng_;
};

std::vector<StateVector> sample_initial_states(InitialStateSampler& sampler, std::size_t n);

}  // namespace broccoli
