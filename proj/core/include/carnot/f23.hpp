#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "carnot/scalar.hpp"

namespace carnot {

// Point of F23 in exponential coordinates of the second kind:
// x = exp(x5 X5) exp(x4 X4) exp(x3 X3) exp(x2 X2) exp(x1 X1).
template <class T>
struct Pt2 {
  std::array<T, 5> x{};
  const T& operator[](std::size_t i) const { return x[i]; }
  T& operator[](std::size_t i) { return x[i]; }
  friend bool operator==(const Pt2& a, const Pt2& b) { return a.x == b.x; }
};

// Point in exponential coordinates of the first kind: exp(sum a_i X_i).
template <class T>
struct Pt1 {
  std::array<T, 5> a{};
  const T& operator[](std::size_t i) const { return a[i]; }
  T& operator[](std::size_t i) { return a[i]; }
  friend bool operator==(const Pt1& p, const Pt1& q) { return p.a == q.a; }
};

inline constexpr std::array<int, 5> kF23Weights{1, 1, 2, 3, 3};

template <class T>
Pt2<T> mul2(const Pt2<T>& x, const Pt2<T>& y) {
  const T half = ratio<T>(1, 2);
  Pt2<T> r;
  r[0] = x[0] + y[0];
  r[1] = x[1] + y[1];
  r[2] = x[2] + y[2] - x[0] * y[1];
  r[3] = x[3] + y[3] - x[0] * y[2] + half * x[0] * x[0] * y[1];
  r[4] = x[4] + y[4] + x[0] * x[1] * y[1] + half * x[0] * y[1] * y[1] - x[1] * y[2];
  return r;
}

template <class T>
Pt1<T> mul1(const Pt1<T>& a, const Pt1<T>& b) {
  const T half = ratio<T>(1, 2);
  const T twelfth = ratio<T>(1, 12);
  const T d = a[1] * b[0] - a[0] * b[1];  // coefficient of X3 in [A, B]
  Pt1<T> r;
  r[0] = a[0] + b[0];
  r[1] = a[1] + b[1];
  r[2] = a[2] + b[2] + half * d;
  r[3] = a[3] + b[3] + half * (a[2] * b[0] - a[0] * b[2]) - twelfth * a[0] * d + twelfth * b[0] * d;
  r[4] = a[4] + b[4] + half * (a[2] * b[1] - a[1] * b[2]) - twelfth * a[1] * d + twelfth * b[1] * d;
  return r;
}

template <class T>
Pt1<T> to_first(const Pt2<T>& x) {
  Pt1<T> a;
  a[0] = x[0];
  a[1] = x[1];
  a[2] = x[2] + ratio<T>(1, 2) * x[0] * x[1];
  a[3] = x[3] + ratio<T>(1, 2) * x[0] * x[2] + ratio<T>(1, 12) * x[0] * x[0] * x[1];
  a[4] = x[4] + ratio<T>(1, 2) * x[1] * x[2] - ratio<T>(1, 12) * x[0] * x[1] * x[1];
  return a;
}

template <class T>
Pt2<T> to_second(const Pt1<T>& a) {
  Pt2<T> x;
  x[0] = a[0];
  x[1] = a[1];
  x[2] = a[2] - ratio<T>(1, 2) * a[0] * a[1];
  x[3] = a[3] + ratio<T>(1, 6) * a[0] * a[0] * a[1] - ratio<T>(1, 2) * a[0] * a[2];
  x[4] = a[4] + ratio<T>(1, 3) * a[0] * a[1] * a[1] - ratio<T>(1, 2) * a[1] * a[2];
  return x;
}

template <class T>
Pt1<T> operator-(Pt1<T> a) {
  for (auto& v : a.a) v = -v;
  return a;
}

template <class T>
Pt2<T> inv(const Pt2<T>& x) {
  return to_second(-to_first(x));
}

// Coordinates of the left-invariant field X_i (i = 1..5) at x.
template <class T>
std::array<T, 5> lvf(int i, const Pt2<T>& x) {
  std::array<T, 5> v{T(0), T(0), T(0), T(0), T(0)};
  switch (i) {
    case 1:
      v[0] = T(1);
      break;
    case 2:
      v[1] = T(1);
      v[2] = -x[0];
      v[3] = ratio<T>(1, 2) * x[0] * x[0];
      v[4] = x[0] * x[1];
      break;
    case 3:
      v[2] = T(1);
      v[3] = -x[0];
      v[4] = -x[1];
      break;
    case 4:
      v[3] = T(1);
      break;
    case 5:
      v[4] = T(1);
      break;
    default:
      throw std::out_of_range("vector field index must be in 1..5");
  }
  return v;
}

// exp(t(a X1 + X2)).
template <class T>
Pt2<T> flow_horiz(const T& a, const T& t) {
  Pt2<T> r;
  const T t2 = t * t;
  const T t3 = t2 * t;
  r[0] = a * t;
  r[1] = t;
  r[2] = -ratio<T>(1, 2) * a * t2;
  r[3] = ratio<T>(1, 6) * a * a * t3;
  r[4] = ratio<T>(1, 3) * a * t3;
  return r;
}

// exp(a X1 + b X2).
template <class T>
Pt2<T> exp_horizontal(const T& a, const T& b) {
  Pt2<T> r;
  r[0] = a;
  r[1] = b;
  r[2] = -ratio<T>(1, 2) * a * b;
  r[3] = ratio<T>(1, 6) * a * a * b;
  r[4] = ratio<T>(1, 3) * a * b * b;
  return r;
}

// Intrinsic dilation; no positivity check (symbolic use).
template <class T>
Pt2<T> dilate2_unchecked(const T& lambda, const Pt2<T>& x) {
  const T l2 = lambda * lambda;
  const T l3 = l2 * lambda;
  return Pt2<T>{{lambda * x[0], lambda * x[1], l2 * x[2], l3 * x[3], l3 * x[4]}};
}

template <class T>
Pt2<T> dilate2(const T& lambda, const Pt2<T>& x) {
  if constexpr (ScalarTraits<T>::ordered) {
    if (!(lambda > 0)) throw std::domain_error("dilation factor must be positive");
  }
  return dilate2_unchecked(lambda, x);
}

// Box gauge max(|x1|, |x2|, |x3|^(1/2), |x4|^(1/3), |x5|^(1/3)).
inline double gauge(const Pt2<double>& x) {
  return std::max({std::abs(x[0]), std::abs(x[1]), std::sqrt(std::abs(x[2])),
                   std::cbrt(std::abs(x[3])), std::cbrt(std::abs(x[4]))});
}

// P(x) = x2^3 x4 - 2 x2^2 x3^2 - 6 x2 x3 x5 - 6 x5^2.
template <class T>
T paraboloid_poly(const Pt2<T>& x) {
  const T x2sq = x[1] * x[1];
  return x2sq * x[1] * x[3] - T(2) * x2sq * x[2] * x[2] - T(6) * x[1] * x[2] * x[4] -
         T(6) * x[4] * x[4];
}

// The same polynomial in first-kind coordinates.
template <class T>
T paraboloid_poly_first(const Pt1<T>& a) {
  const T a2sq = a[1] * a[1];
  return -ratio<T>(1, 2) * a2sq * a[2] * a[2] + a2sq * a[1] * a[3] - a[0] * a2sq * a[4] -
         T(6) * a[4] * a[4];
}

template <class To, class From>
Pt2<To> convert(const Pt2<From>& p) {
  Pt2<To> r;
  for (std::size_t i = 0; i < 5; ++i) {
    if constexpr (std::is_same_v<To, double> && std::is_same_v<From, Rational>)
      r[i] = to_double(p[i]);
    else if constexpr (std::is_same_v<To, Rational> && std::is_same_v<From, double>)
      r[i] = from_double(p[i]);
    else
      r[i] = To(p[i]);
  }
  return r;
}

}  // namespace carnot
