#pragma once

#include <bit>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace leaguerank {

// splitmix64 finalizer; used both as a seed scrambler and to fold several
// values into one stream-independent 64-bit seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t h, std::uint64_t v) {
  return splitmix64(h ^ v);
}

inline std::uint64_t mix_seed(std::uint64_t h, double v) {
  return mix_seed(h, std::bit_cast<std::uint64_t>(v));
}

// All stochastic code draws through the helpers below instead of
// std::uniform_*_distribution, whose output is implementation-defined.
// This keeps seeded runs byte-reproducible across standard libraries.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Unbiased integer in [0, n) via masked rejection.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t mask = ~0ULL >> std::countl_zero(n | 1ULL);
  std::uint64_t x;
  do {
    x = rng() & mask;
  } while (x >= n);
  return x;
}

template <typename T>
void fisher_yates_shuffle(std::vector<T>& items, std::mt19937_64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(uniform_below(rng, i));
    std::swap(items[i - 1], items[j]);
  }
}

inline std::mt19937_64 make_engine(std::uint64_t seed) {
  return std::mt19937_64(splitmix64(seed));
}

}  // namespace leaguerank
