#pragma once

#include <random>

#include "carnot/f23.hpp"
#include "carnot/random.hpp"
#include "carnot/semigroup.hpp"

namespace carnot::test_support {

inline Pt2<Rational> random_point(std::mt19937_64& rng, long bound = 3, long max_den = 8) {
  Pt2<Rational> p;
  for (auto& v : p.x) v = random_rational(rng, -bound, bound, max_den);
  return p;
}

inline Pt1<Rational> random_point1(std::mt19937_64& rng, long bound = 3, long max_den = 8) {
  Pt1<Rational> p;
  for (auto& v : p.a) v = random_rational(rng, -bound, bound, max_den);
  return p;
}

inline Rational random_positive(std::mt19937_64& rng, long hi = 3, long max_den = 8) {
  for (;;) {
    Rational r = random_rational(rng, 0, hi, max_den);
    if (sgn(r) > 0) return r;
  }
}

// Endpoint-generating controls with b >= 0.
inline ZigZag random_w_zigzag(std::mt19937_64& rng, std::size_t k) {
  ZigZag zz;
  for (std::size_t i = 0; i < k; ++i)
    zz.steps.push_back({random_rational(rng, -2, 2, 6), random_rational(rng, 0, 2, 6)});
  return zz;
}

// Random point of the open paraboloid {P > 0, x2 > 0} by rejection.
inline Pt2<Rational> random_s_interior(std::mt19937_64& rng) {
  for (;;) {
    Pt2<Rational> p = random_point(rng, 2, 6);
    if (member_S(p).verdict == SVerdict::ParaboloidInterior) return p;
  }
}

}  // namespace carnot::test_support
