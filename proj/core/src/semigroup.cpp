#include "carnot/semigroup.hpp"

#include "carnot/lie.hpp"
#include "carnot/linalg.hpp"

namespace carnot {

Pt2<Rational> zigzag_endpoint(const ZigZag& zz) {
  std::vector<std::array<Rational, 2>> s;
  s.reserve(zz.steps.size());
  for (const auto& c : zz.steps) s.push_back({c.a, c.b});
  return zigzag_endpoint<Rational>(s);
}

Rational paraboloid_hat(const Rational& x, const Rational& y, const Rational& z) {
  return y - 2 * x * x - 6 * x * z - 6 * z * z;
}

GmapPreimage gmap_invert(const Rational& x, const Rational& y, const Rational& z) {
  const Rational q = 2 * x + 3 * z;
  if (sgn(q) == 0) throw GmapInversionError(InversionFailure::OnCriticalPlane, "point lies on the plane 2x + 3z = 0");
  const Rational ph = paraboloid_hat(x, y, z);
  if (sgn(ph) <= 0) throw GmapInversionError(InversionFailure::OutsideParaboloid, "point is not inside the paraboloid");
  GmapPreimage r;
  r.a = -2 * (2 * x * x * x - 9 * x * y - 9 * y * z) / (3 * (2 * x * x + 6 * x * z - y + 6 * z * z));
  r.b = -3 * (4 * x * x * x * x + 8 * x * x * x * z - 12 * x * x * y - 36 * x * y * z - 3 * y * y - 18 * y * z * z) /
        (2 * q * q * q);
  r.c = 3 * ph / (3 * ph + 2 * q * q);
  return r;
}

std::array<RatFunc, 3> gmap_inverse_formulas() {
  const MPoly x = MPoly::variable("x"), y = MPoly::variable("y"), z = MPoly::variable("z");
  const Rational two(2), three(3);
  const MPoly q = two * x + three * z;
  RatFunc a(-2 * (2 * x.pow(3) - 9 * x * y - 9 * y * z), 3 * (2 * x * x + 6 * x * z - y + 6 * z * z));
  RatFunc b(-3 * (4 * x.pow(4) + 8 * x.pow(3) * z - 12 * x * x * y - 36 * x * y * z - 3 * y * y - 18 * y * z * z),
            2 * q.pow(3));
  RatFunc c(-3 * (2 * x * x + 6 * x * z - y + 6 * z * z), 2 * x * x + 6 * x * z + 3 * y);
  return {a, b, c};
}

std::string to_string(SVerdict v) {
  switch (v) {
    case SVerdict::ParaboloidInterior: return "ParaboloidInterior";
    case SVerdict::BoundaryCurve: return "BoundaryCurve";
    case SVerdict::BoundarySurface: return "BoundarySurface";
    case SVerdict::Outside: return "Outside";
  }
  return "?";
}

SMembership member_S(const Pt2<Rational>& x) {
  SMembership m;
  m.p_value = paraboloid_poly(x);
  m.curve_residual = x[1] * x[1] * x[3] + x[2] * x[4];
  m.critical_residual = 2 * x[1] * x[2] + 3 * x[4];
  if (sgn(m.p_value) > 0 && sgn(x[1]) > 0) {
    m.verdict = SVerdict::ParaboloidInterior;
  } else if (sgn(m.p_value) == 0 && sgn(x[1]) >= 0 && sgn(m.curve_residual) == 0 &&
             sgn(m.critical_residual) == 0 &&
             (sgn(x[1]) > 0 || (sgn(x[2]) == 0 && sgn(x[3]) == 0 && sgn(x[4]) == 0))) {
    // At x2 = 0 the curve exp(W)exp(R X1) is only the X1 axis.
    m.verdict = SVerdict::BoundaryCurve;
  } else if (sgn(m.p_value) == 0 && sgn(x[1]) > 0) {
    m.verdict = SVerdict::BoundarySurface;
  } else {
    m.verdict = SVerdict::Outside;
  }
  return m;
}

namespace {

// Factorisation through G when the normalised point is off the critical plane.
std::optional<ZigZag> factor_direct(const Pt2<Rational>& x) {
  const Rational mu = x[1];
  const Pt2<Rational> y = dilate2(Rational(1 / mu), x);
  GmapPreimage g;
  try {
    g = gmap_invert(y[2], y[3], y[4]);
  } catch (const GmapInversionError& e) {
    if (e.reason == InversionFailure::OnCriticalPlane) return std::nullopt;
    throw NotInInterior("normalised point left the paraboloid");
  }
  const Rational one_c = 1 - g.c;
  ZigZag zz;
  zz.steps.push_back({mu * g.c * g.a, mu * g.c});
  zz.steps.push_back({mu * one_c * g.b, mu * one_c});
  const Rational shift = x[0] - mu * (g.c * g.a + one_c * g.b);
  if (sgn(shift) != 0) zz.steps.push_back({shift, 0});
  return zz;
}

std::vector<Pt2<Rational>> detour_candidates() {
  std::vector<Pt2<Rational>> out;
  const std::array<Rational, 3> p1{Rational(0), Rational(1), Rational(-1)};
  const std::array<Rational, 3> p3{Rational(0), make_rational(1, 2), make_rational(-1, 2)};
  const std::array<Rational, 3> p5{make_rational(1, 10), make_rational(-1, 10), make_rational(1, 5)};
  for (const auto& a : p1)
    for (const auto& c : p3)
      for (const auto& e : p5) {
        Pt2<Rational> p{{a, Rational(1), c, Rational(1), e}};
        auto m = member_S(p);
        if (m.verdict == SVerdict::ParaboloidInterior && sgn(m.critical_residual) != 0) out.push_back(p);
      }
  return out;
}

}  // namespace

ZigZag factor_in_W6(const Pt2<Rational>& x) {
  if (member_S(x).verdict != SVerdict::ParaboloidInterior)
    throw NotInInterior("point is not in the interior of the semigroup");
  if (auto zz = factor_direct(x)) return *zz;

  static const std::vector<Pt2<Rational>> grid = detour_candidates();
  for (int k = 1; k <= 40; ++k) {
    Rational eps(1);
    eps /= Rational(BigInt(1) << k);
    for (const auto& p : grid) {
      const Pt2<Rational> s0 = dilate2(eps, p);
      const Pt2<Rational> rest = mul2(inv(s0), x);
      if (member_S(rest).verdict != SVerdict::ParaboloidInterior) continue;
      auto head = factor_direct(s0);
      auto tail = factor_direct(rest);
      if (!head || !tail) continue;
      ZigZag zz = *head;
      zz.steps.insert(zz.steps.end(), tail->steps.begin(), tail->steps.end());
      return zz;
    }
  }
  throw FactorizationError("no detour found on the candidate grid");
}

ZigZag factor_boundary(const Pt2<Rational>& x) {
  const SVerdict v = member_S(x).verdict;
  if (v != SVerdict::BoundaryCurve && v != SVerdict::BoundarySurface)
    throw std::domain_error("point is not on the boundary part of the semigroup");
  ZigZag zz;
  if (sgn(x[1]) == 0) {  // the X1 axis
    if (sgn(x[0]) != 0) zz.steps.push_back({x[0], 0});
    return zz;
  }
  // exp(sX1) exp(aX1 + bX2) has x3 = -b(a/2 + s), x5 = b^2 (a/3 + s/2), and P = 0.
  const Rational b = x[1];
  const Rational u = -x[2] / b;
  const Rational a = 12 * x[4] / (b * b) - 6 * u;
  const Rational s = u - a / 2;
  const Rational t = x[0] - s - a;
  if (sgn(s) != 0) zz.steps.push_back({s, 0});
  zz.steps.push_back({a, b});
  if (sgn(t) != 0) zz.steps.push_back({t, 0});
  if (!(zigzag_endpoint(zz) == x)) throw std::logic_error("boundary factorisation failed");
  return zz;
}

bool member_wedge(const Pt1<Rational>& a) {
  if (sgn(a[4]) != 0) return false;
  if (sgn(a[1]) == 0) return true;
  return sgn(a[1]) > 0 && 2 * a[1] * a[3] >= a[2] * a[2];
}

W3Separation w3_separation(const ZigZag& zz) {
  if (zz.steps.empty() || zz.steps.size() % 2 != 0)
    throw MalformedZigZag("expected alternating X1 and (X1+X2) steps");
  Rational cubes = 0;
  for (std::size_t i = 0; i < zz.steps.size(); ++i) {
    const auto& s = zz.steps[i];
    if (i % 2 == 0) {
      if (sgn(s.b) != 0) throw MalformedZigZag("step " + std::to_string(i) + " must be a pure X1 step");
    } else {
      if (s.a != s.b || sgn(s.b) <= 0)
        throw MalformedZigZag("step " + std::to_string(i) + " must be b(X1+X2) with b > 0");
      cubes += s.b * s.b * s.b;
    }
  }
  const Pt2<Rational> q = zigzag_endpoint(zz);
  W3Separation r{q[1], q[3], cubes / 24};
  if (r.q4 < r.lower_bound) throw std::logic_error("W3 separation bound violated");
  return r;
}

namespace {

std::array<Rational, 5> tangent_of(const Pt2<MPoly>& d) {
  std::array<Rational, 5> v;
  for (std::size_t i = 0; i < 5; ++i) v[i] = d[i].coefficient({{"e", 1}});
  return v;
}

}  // namespace

PointIdentityReport verify_point_F23() {
  PointIdentityReport r;
  const AlgebraPtr alg = f23_algebra();
  const LieVec X1 = LieVec::basis(alg, 0), X2 = LieVec::basis(alg, 1);
  const LieVec lie = X2 + exp_ad(X1, X2).eval(Rational(1));
  for (std::size_t i = 0; i < 5; ++i) r.lie_side[i] = lie[i];

  const Rational h = make_rational(1, 2);
  const std::vector<std::array<Rational, 2>> base{{0, h}, {1, 0}, {0, 1}, {-1, 0}, {0, h}};
  const Pt2<Rational> q0 = zigzag_endpoint<Rational>(base);
  r.product_side = to_first(q0);
  // Independent route through the first-kind law.
  Pt1<Rational> via1;
  for (const auto& s : base) via1 = mul1(via1, Pt1<Rational>{{s[0], s[1], 0, 0, 0}});
  r.product_identity = r.lie_side == r.product_side && via1 == r.product_side;

  // Derivative of q0^{-1} q(eps) in each control, exact via a formal variable.
  const MPoly e = MPoly::variable("e");
  Pt2<MPoly> q0inv;
  {
    const Pt2<Rational> qi = inv(q0);
    for (std::size_t i = 0; i < 5; ++i) q0inv[i] = MPoly(qi[i]);
  }
  const std::array<std::size_t, 5> slot{1, 0, 1, 0, 1};  // which control each eps_i perturbs
  for (std::size_t i = 0; i < 5; ++i) {
    std::vector<std::array<MPoly, 2>> steps;
    for (std::size_t s = 0; s < base.size(); ++s) {
      std::array<MPoly, 2> c{MPoly(base[s][0]), MPoly(base[s][1])};
      if (s == i) c[slot[s]] += e;
      steps.push_back(c);
    }
    r.tangents[i] = tangent_of(mul2(q0inv, zigzag_endpoint<MPoly>(steps)));
  }
  const auto q = [](long n, long d = 1) { return make_rational(n, d); };
  r.expected_tangents = {{{q(0), q(1), q(0), q(0), q(1)},
                          {q(1), q(0), q(-3, 2), q(1), q(-9, 8)},
                          {q(0), q(1), q(-1), q(1, 2), q(-1, 2)},
                          {q(1), q(0), q(-1, 2), q(0), q(-1, 8)},
                          {q(0), q(1), q(0), q(0), q(0)}}};
  r.tangents_match = r.tangents == r.expected_tangents;
  std::vector<QVector> rows;
  for (const auto& t : r.tangents) rows.emplace_back(t.begin(), t.end());
  r.rank = rank(rows);
  return r;
}

F24InteriorReport verify_wedge_interior_F24() {
  F24InteriorReport r;
  const AlgebraPtr alg = f24_algebra();
  r.dim = alg->dim();
  using MV = BasicLieVec<MPoly>;
  auto lift = [&](const LieVec& v) {
    MV m(alg);
    for (std::size_t i = 0; i < v.size(); ++i) m[i] = MPoly(v[i]);
    return m;
  };
  const LieVec X1 = LieVec::basis(alg, 0), X2 = LieVec::basis(alg, 1);
  const Rational h = make_rational(1, 2);
  const LieVec lhs = Rational(2) * X2 + exp_ad(X1, Rational(2) * X2).eval(-h) + exp_ad(X1, X2).eval(h);

  // exp(X2) exp(-X1/2) exp(X2) exp(X1) exp(X2) exp(-X1) exp(X2) exp(X1/2) exp(X2)
  const std::vector<std::pair<int, Rational>> factors{
      {1, 1}, {0, -h}, {1, 1}, {0, 1}, {1, 1}, {0, -1}, {1, 1}, {0, h}, {1, 1}};
  LieVec prod(alg);
  for (const auto& [g, s] : factors) prod = bch(prod, s * LieVec::basis(alg, g));
  r.product_identity = prod == lhs;

  const MPoly e = MPoly::variable("e");
  const MV minus_log = lift(-prod);
  std::vector<QVector> rows;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    MV p(alg);
    for (std::size_t k = 0; k < factors.size(); ++k) {
      MPoly s(factors[k].second);
      if (k == i) s += e;
      p = bch(p, s * lift(LieVec::basis(alg, factors[k].first)));
    }
    const MV d = bch(minus_log, p);
    QVector row(alg->dim());
    for (std::size_t j = 0; j < row.size(); ++j) row[j] = d[j].coefficient({{"e", 1}});
    rows.push_back(std::move(row));
  }
  r.rank = rank(rows);
  return r;
}

}  // namespace carnot
