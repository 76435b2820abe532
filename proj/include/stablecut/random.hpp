#ifndef STABLECUT_RANDOM_HPP
#define STABLECUT_RANDOM_HPP

#include <cstdint>
#include <limits>

namespace stablecut {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// SplitMix64 generator. Satisfies UniformRandomBitGenerator, but all
/// sampling in this library goes through the members below so results do not
/// depend on the standard library's distribution implementations.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

  constexpr result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  /// Uniform on [0, 1) with 53 random bits.
  constexpr double uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  constexpr double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  /// Uniform integer in [0, bound) by rejection; bound > 0.
  constexpr std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = max() - max() % bound;
    std::uint64_t x = (*this)();
    while (x >= limit) x = (*this)();
    return x % bound;
  }

 private:
  std::uint64_t state_;
};

/// Stream tags keep the independent random sources of one seed apart.
enum class StreamTag : std::uint64_t {
  kEdgeWeight = 1,
  kPartition = 2,
  kEdgePresence = 3,
  kPerturbation = 4,
  kJitter = 5,
  kRounding = 6,
  kInstance = 7,
};

/// Independent generator for (seed, tag, index). Edge streams use
/// index = u * n + v so a weight does not depend on generation order.
constexpr SplitMix64 make_stream(std::uint64_t seed, StreamTag tag, std::uint64_t index) {
  const std::uint64_t base = mix64(seed ^ mix64(static_cast<std::uint64_t>(tag)));
  return SplitMix64(mix64(base + 0x9e3779b97f4a7c15ULL * (index + 1)));
}

}  // namespace stablecut

#endif  // STABLECUT_RANDOM_HPP
