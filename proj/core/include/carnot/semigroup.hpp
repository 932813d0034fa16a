#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "carnot/f23.hpp"
#include "carnot/mpoly.hpp"

namespace carnot {

// One unit-time flow along a X1 + b X2, i.e. the factor exp(a X1 + b X2).
struct Control {
  Rational a;
  Rational b;
  friend bool operator==(const Control&, const Control&) = default;
};

struct ZigZag {
  std::vector<Control> steps;
};

template <class T>
Pt2<T> zigzag_endpoint(const std::vector<std::array<T, 2>>& steps) {
  Pt2<T> p;
  for (auto& v : p.x) v = T(0);
  for (const auto& s : steps) p = mul2(p, exp_horizontal(s[0], s[1]));
  return p;
}

Pt2<Rational> zigzag_endpoint(const ZigZag& zz);

// Components 3..5 of exp(c(a X1 + X2)) exp((1-c)(b X1 + X2)).
template <class T>
std::array<T, 3> gmap(const T& a, const T& b, const T& c) {
  const T one = T(1);
  const T c1 = c - one;  // c - 1
  const T x = ratio<T>(1, 2) * (a * (c - T(2)) * c - b * c1 * c1);
  const T y = ratio<T>(1, 6) * (a * a * (T(3) - T(2) * c) * c * c + T(3) * a * b * c * c1 * c1 -
                                b * b * c1 * c1 * c1);
  const T z = ratio<T>(1, 6) * (b * (c * c * c - T(3) * c + T(2)) - a * c * (c * c - T(3)));
  return {x, y, z};
}

enum class InversionFailure { OnCriticalPlane, OutsideParaboloid };

class GmapInversionError : public std::domain_error {
 public:
  GmapInversionError(InversionFailure r, const std::string& what)
      : std::domain_error(what), reason(r) {}
  InversionFailure reason;
};

struct GmapPreimage {
  Rational a, b, c;
};

// P^(x, y, z) = y - 2x^2 - 6xz - 6z^2.
Rational paraboloid_hat(const Rational& x, const Rational& y, const Rational& z);

// Unique preimage with c in (0,1) on {P^ > 0} minus {2x + 3z = 0}.
GmapPreimage gmap_invert(const Rational& x, const Rational& y, const Rational& z);

// The three inversion formulas as rational functions of x, y, z.
std::array<RatFunc, 3> gmap_inverse_formulas();

// BoundaryCurve: P = 0 on exp(W) exp(R X1). BoundarySurface: the rest of
// S on P = 0, i.e. x2 > 0 off that curve (reached as exp(sX1) exp(w) exp(tX1)).
// Only the closed half-space W = {b >= 0} is classified. For the open one the
// reachable set contains ParaboloidInterior; nothing finer is claimed.
enum class SVerdict { ParaboloidInterior, BoundaryCurve, BoundarySurface, Outside };
std::string to_string(SVerdict v);

struct SMembership {
  SVerdict verdict;
  Rational p_value;
  Rational curve_residual;     // x2^2 x4 + x3 x5
  Rational critical_residual;  // 2 x2 x3 + 3 x5
};

SMembership member_S(const Pt2<Rational>& x);

class NotInInterior : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class FactorizationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A zig-zag of at most 6 steps with every b >= 0 whose endpoint is x.
ZigZag factor_in_W6(const Pt2<Rational>& x);

// At most three steps exp(sX1) exp(aX1 + bX2) exp(tX1), exact, for points of
// S with P = 0. Throws std::domain_error otherwise.
ZigZag factor_boundary(const Pt2<Rational>& x);

bool member_wedge(const Pt1<Rational>& a);

class MalformedZigZag : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct W3Separation {
  Rational q2;
  Rational q4;
  Rational lower_bound;  // (1/24) sum b_j^3
};

// Steps must alternate (a_j, 0) and (b_j, b_j) with b_j > 0, starting with an
// X1 step; that is exp(a_1 X1) exp(b_1 (X1+X2)) ... exp(b_k (X1+X2)).
W3Separation w3_separation(const ZigZag& zz);

struct PointIdentityReport {
  bool product_identity = false;  // X2 + Ad_{exp X1} X2 equals the 5-step product
  Pt1<Rational> lie_side;         // first-kind coordinates of X2 + Ad_{exp X1} X2
  Pt1<Rational> product_side;     // first-kind coordinates of the zig-zag endpoint
  std::array<std::array<Rational, 5>, 5> tangents;
  std::array<std::array<Rational, 5>, 5> expected_tangents;
  bool tangents_match = false;
  std::size_t rank = 0;
  bool ok() const { return product_identity && tangents_match && rank == 5; }
};

PointIdentityReport verify_point_F23();

// Step-4 analogue: 2X2 + Ad_{exp(-X1/2)}(2X2) + Ad_{exp(X1/2)}X2 against a
// nine-factor product, and the rank of the perturbed product map.
struct F24InteriorReport {
  bool product_identity = false;
  std::size_t rank = 0;
  std::size_t dim = 8;
  bool ok() const { return product_identity && rank == dim; }
};

F24InteriorReport verify_wedge_interior_F24();

}  // namespace carnot
