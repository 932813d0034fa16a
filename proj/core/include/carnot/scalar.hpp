#pragma once

#include <cmath>

#include "carnot/mpoly.hpp"
#include "carnot/rational.hpp"

namespace carnot {

// Uniform access to the scalar kinds used by generic group and algebra code.
template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool ordered = true;
  static constexpr bool exact = false;
  static double from(const Rational& q) { return to_double(q); }
  static bool is_zero(double v) { return v == 0.0; }
  static int sign(double v) { return (v > 0) - (v < 0); }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool ordered = true;
  static constexpr bool exact = true;
  static Rational from(const Rational& q) { return q; }
  static bool is_zero(const Rational& v) { return sgn(v) == 0; }
  static int sign(const Rational& v) { return sgn(v); }
};

template <>
struct ScalarTraits<MPoly> {
  static constexpr bool ordered = false;
  static constexpr bool exact = true;
  static MPoly from(const Rational& q) { return MPoly(q); }
  static bool is_zero(const MPoly& v) { return v.is_zero(); }
};

template <class T>
T ratio(long num, long den = 1) {
  return ScalarTraits<T>::from(make_rational(num, den));
}

template <class T>
bool is_zero(const T& v) {
  return ScalarTraits<T>::is_zero(v);
}

}  // namespace carnot
