#pragma once

// Reproducible randomness. Every consumer draws from std::mt19937_64 (whose
// output sequence is fixed by the standard) seeded through a SplitMix64 mix
// of the master seed and a purpose tag, and converts raw words to doubles as
// (word >> 11) * 2^-53. No standard distribution objects are used, since
// their outputs differ between standard library implementations.

#include <cstddef>
#include <cstdint>
#include <random>

namespace hdg::rng {

enum class Stream : std::uint64_t {
  Coordinates = 0x636f6f7264ULL,
  Edges = 0x6564676573ULL,
  Trial = 0x747269616cULL,
  Realize = 0x7265616cULL,
  Instance = 0x696e7374ULL,
};

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::uint64_t derive(std::uint64_t master, Stream stream, std::uint64_t index = 0) {
  return splitmix64(master ^ splitmix64(static_cast<std::uint64_t>(stream) ^ splitmix64(index)));
}

class Generator {
 public:
  explicit Generator(std::uint64_t seed) : engine_(seed) {}
  Generator(std::uint64_t master, Stream stream, std::uint64_t index = 0)
      : engine_(derive(master, stream, index)) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform in [0, bound), bound > 0; rejection keeps it unbiased.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t r;
    do r = engine_();
    while (r >= limit);
    return r % bound;
  }

  template <typename It>
  void shuffle(It first, It last) {
    auto n = static_cast<std::uint64_t>(last - first);
    for (std::uint64_t i = n; i > 1; --i) {
      std::uint64_t j = below(i);
      std::swap(first[i - 1], first[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace hdg::rng
