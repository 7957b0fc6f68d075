#include "broccoli/sampler.hpp"

#include <string>

#include "broccoli/errors.hpp"

namespace broccoli {
namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Xoshiro256::Xoshiro256(std::uint64_t seed) {
  for (auto& word : s_) word = splitmix64(seed);
}

std::uint64_t Xoshiro256::next() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Xoshiro256::uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

InitialStateSampler::InitialStateSampler(std::uint64_t seed, std::vector<SamplingInterval> ranges)
    : seed_(seed), ranges_(std::move(ranges)), rng_(seed) {
  if (ranges_.size() > kMaxDimension) throw ConfigError("too many sampling dimensions");
  for (std::size_t i = 0; i < ranges_.size(); ++i) {
    if (!(ranges_[i].lower <= ranges_[i].upper)) {
      throw ConfigError("sampling range of dimension " + std::to_string(i) + " is empty");
    }
  }
}

StateVector InitialStateSampler::next() {
  std::vector<double> v(ranges_.size());
  for (std::size_t i = 0; i < ranges_.size(); ++i) {
    const auto& r = ranges_[i];
    v[i] = r.lower + (r.upper - r.lower) * rng_.uniform01();
  }
  return StateVector(v);
}

std::vector<StateVector> sample_initial_states(InitialStateSampler& sampler, std::size_t n) {
  if (n == 0) throw ConfigError("number of initial states must be at least 1");
  std::vector<StateVector> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(sampler.next());
  return out;
}

}  // namespace broccoli
