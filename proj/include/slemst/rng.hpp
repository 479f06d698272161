#pragma once

#include <cstdint>

namespace slemst {

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

// Counter-based stream: the value at `index` depends only on (key, index), so
// draws can be made in any order and from any thread.
class CounterStream {
 public:
  constexpr CounterStream(std::uint64_t seed, std::uint64_t tag) : key_(mix64(seed ^ mix64(tag + kGoldenGamma))) {}

  constexpr std::uint64_t bits(std::uint64_t index) const { return mix64(key_ + (index + 1) * kGoldenGamma); }

  // Uniform on [0, 1) with 53 random bits.
  constexpr double uniform(std::uint64_t index) const { return static_cast<double>(bits(index) >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t key_;
};

// Per-sample seed: seed_i = mix(mix(master ^ mix(cell)) + (i + 1) * gamma).
constexpr std::uint64_t sample_seed(std::uint64_t master_seed, std::uint64_t cell_id, std::uint64_t sample_index) {
  return mix64(mix64(master_seed ^ mix64(cell_id + kGoldenGamma)) + (sample_index + 1) * kGoldenGamma);
}

// Small sequential generator for resampling tests (UniformRandomBitGenerator).
class SplitMix64 {
 public:
  using result_type = std::uint64_t;
  explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  constexpr result_type operator()() {
    state_ += kGoldenGamma;
    return mix64(state_);
  }

 private:
  std::uint64_t state_;
};

}  // namespace slemst
