#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace graphembed {

// Counter-based pseudo-randomness.  Every random decision in the library is
// drawn from a stream keyed by an explicit tuple (seed, purpose tag,
// counters...), never from shared mutable state.  Two consequences:
//   * results are independent of thread count and scheduling, and
//   * any stream can be reconstructed in isolation (tests do exactly that).

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline constexpr std::uint64_t key_hash(std::uint64_t seed) {
  return splitmix64(seed);
}

template <typename... Rest>
constexpr std::uint64_t key_hash(std::uint64_t seed, std::uint64_t head, Rest... rest) {
  return key_hash(splitmix64(seed ^ (head + 0x9e3779b97f4a7c15ULL)), rest...);
}

// Stream purpose tags.  Distinct tags guarantee distinct streams even when
// the trailing counters coincide.
namespace rng_tag {
inline constexpr std::uint64_t kInit = 0xE1ED0001;        // embedding init
inline constexpr std::uint64_t kNegBatch = 0xE1ED0002;    // per-batch negatives
inline constexpr std::uint64_t kNegIter = 0xE1ED0003;     // per-iteration negatives
inline constexpr std::uint64_t kWalk = 0xE1ED0004;        // training walks
inline constexpr std::uint64_t kCorpusWalk = 0xE1ED0005;  // corpus walks
inline constexpr std::uint64_t kSkipNeg = 0xE1ED0006;     // skip-gram negatives
inline constexpr std::uint64_t kSbm = 0xE1ED0007;         // block-model edges
inline constexpr std::uint64_t kGauss = 0xE1ED0008;       // gaussian sketches
inline constexpr std::uint64_t kSplit = 0xE1ED0009;       // train/test splits
inline constexpr std::uint64_t kKmeans = 0xE1ED000A;      // clustering seeds
inline constexpr std::uint64_t kLinkNeg = 0xE1ED000B;     // link-pred negatives
inline constexpr std::uint64_t kSample = 0xE1ED000C;      // vertex subsampling
}  // namespace rng_tag

class RngStream {
 public:
  template <typename... Key>
  explicit RngStream(std::uint64_t seed, Key... key)
      : state_(key_hash(seed, static_cast<std::uint64_t>(key)...)) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n); n must be positive.  Multiply-shift map: the
  // bias is below n / 2^64, far under anything observable at our scales.
  std::size_t uniform_index(std::size_t n) {
    return static_cast<std::size_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  // Standard normal via Box-Muller; u1 is drawn from (0, 1] so log stays finite.
  double next_gaussian() {
    double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    double u2 = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::uint64_t state_;
};

}  // namespace graphembed
