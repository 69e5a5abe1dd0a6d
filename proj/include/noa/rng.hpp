#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <vector>

namespace noa {

using Seed = std::uint64_t;

namespace detail {

constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace detail

/// SplitMix64 generator. Satisfies UniformRandomBitGenerator.
///
/// Streams are addressed by a key (stage, repetition, column, ...) hashed
/// together with the user seed, so every consumer of randomness gets its own
/// sequence and results do not depend on the order in which streams are used.
class Stream {
 public:
  using result_type = std::uint64_t;

  explicit Stream(Seed seed) noexcept : state_(seed) {}

  Stream(Seed seed, std::initializer_list<std::uint64_t> key) noexcept
      : state_(derive(seed, key)) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    return detail::splitmix64_mix(state_);
  }

  /// Uniform integer in [0, bound) by rejection, bound > 0.
  std::uint64_t below(std::uint64_t bound) noexcept {
    const std::uint64_t limit = max() - (max() % bound + 1) % bound;
    std::uint64_t x = (*this)();
    while (x > limit) x = (*this)();
    return x % bound;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  static constexpr Seed derive(Seed seed, std::initializer_list<std::uint64_t> key) noexcept {
    std::uint64_t h = detail::splitmix64_mix(seed ^ 0x6a09e667f3bcc909ULL);
    for (std::uint64_t k : key) h = detail::splitmix64_mix(h ^ detail::splitmix64_mix(k + 0x9e3779b97f4a7c15ULL));
    return h;
  }

 private:
  std::uint64_t state_;
};

/// Fisher-Yates shuffle driven by Stream::below, portable across standard libraries.
template <typename T>
void shuffle(std::vector<T>& values, Stream& rng) {
  for (std::size_t i = values.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i));
    std::swap(values[i - 1], values[j]);
  }
}

inline std::vector<std::uint32_t> random_permutation(std::uint32_t size, Stream& rng) {
  std::vector<std::uint32_t> perm(size);
  std::iota(perm.begin(), perm.end(), 0u);
  shuffle(perm, rng);
  return perm;
}

}  // namespace noa
