#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <limits>

namespace dualgraph {

/// Stateless 64-bit finalizer (splitmix64 output function).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Derives a child seed from a parent seed and a sequence of keys. Used
/// everywhere a random process is split into independent, order-free pieces
/// (trial i of an estimate, walk j of Wilson's algorithm, instance s of a sweep).
constexpr std::uint64_t derive_seed(std::uint64_t seed,
                                    std::initializer_list<std::uint64_t> keys) noexcept {
  std::uint64_t h = mix64(seed ^ 0x6a09e667f3bcc909ULL);
  for (std::uint64_t key : keys) {
    h = mix64(h ^ mix64(key + 0x3c6ef372fe94f82bULL));
  }
  return h;
}

/// Small counter-style generator: the state is a counter advanced by the
/// golden-ratio increment and every output is mix64 of the counter. Satisfies
/// UniformRandomBitGenerator, so it plugs into <random> where needed, but the
/// helpers below are used instead of std distributions because their output
/// is specified bit-for-bit.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1).
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound), bound > 0 (Lemire's rejection method).
  std::uint64_t below(std::uint64_t bound) noexcept {
    unsigned __int128 m = static_cast<unsigned __int128>((*this)()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<unsigned __int128>((*this)()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  bool bernoulli(double p) noexcept { return uniform() < p; }

  /// Unit-rate exponential deviate.
  double exponential() noexcept { return -std::log1p(-uniform()); }

 private:
  std::uint64_t state_;
};

}  // namespace dualgraph
