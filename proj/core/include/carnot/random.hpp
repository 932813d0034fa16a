#pragma once

#include <cstdint>
#include <random>

#include "carnot/rational.hpp"

namespace carnot {

// Stateless 64-bit mixer (splitmix64 finaliser); sample i of stream `seed`
// is a pure function of (seed, i), so results do not depend on sharding.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t counter_key(std::uint64_t seed, std::uint64_t index, std::uint64_t lane) {
  return mix64(mix64(seed ^ 0x5851f42d4c957f2dULL) + mix64(index) * 0x2545f4914f6cdd1dULL + lane);
}

// Uniform in [0, 1) with 53 random bits.
constexpr double unit_double(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

// Dyadic rational uniform on the grid {k / 2^bits : |k| <= bound * 2^bits}.
inline Rational random_dyadic(std::mt19937_64& rng, long bound, unsigned bits = 8) {
  const long scale = 1L << bits;
  std::uniform_int_distribution<long> d(-bound * scale, bound * scale);
  return make_rational(d(rng), scale);
}

// Small-denominator rational in [lo, hi] (denominator up to max_den).
inline Rational random_rational(std::mt19937_64& rng, long lo, long hi, long max_den = 12) {
  std::uniform_int_distribution<long> dd(1, max_den);
  const long den = dd(rng);
  std::uniform_int_distribution<long> dn(lo * den, hi * den);
  return make_rational(dn(rng), den);
}

}  // namespace carnot
