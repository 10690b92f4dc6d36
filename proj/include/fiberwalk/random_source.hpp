#ifndef FIBERWALK_RANDOM_SOURCE_HPP
#define FIBERWALK_RANDOM_SOURCE_HPP

#include <cstdint>
#include <random>

namespace fiberwalk {

/// Deterministic random stream: std::mt19937_64 (bit-exact across platforms
/// by specification) seeded through splitmix64. Derived streams for parallel
/// chains come from split(), which mixes the original seed with the stream
/// index; the derivation is stable, so (seed, call sequence) fully determines
/// every output.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed);

  /// Independent stream for substream `index`, reproducible from the seed.
  RandomSource split(std::uint64_t index) const;

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Fair coin; true with probability 1/2.
  bool next_fair_sign() { return (next_u64() >> 63) != 0; }

  /// Unbiased uniform draw from {0, ..., n-1} by rejection.
  std::uint64_t next_below(std::uint64_t n);

 private:
  std::uint64_t seed_;
  std::mt19937_64 gen_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace fiberwalk

#endif
