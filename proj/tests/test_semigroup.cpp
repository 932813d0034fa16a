#include <gtest/gtest.h>

#include <random>

#include "carnot/semigroup.hpp"
#include "support.hpp"

using namespace carnot;
using test_support::random_s_interior;
using test_support::random_w_zigzag;

namespace {
const Rational h = make_rational(1, 2);
Pt2<Rational> P2(Rational a, Rational b, Rational c, Rational d, Rational e) { return Pt2<Rational>{{a, b, c, d, e}}; }
}  // namespace

TEST(ZigZag, Endpoints) {
  EXPECT_EQ(zigzag_endpoint(ZigZag{}), P2(0, 0, 0, 0, 0));
  const Rational a = make_rational(3, 7);
  EXPECT_EQ(zigzag_endpoint(ZigZag{{{a, 1}}}), flow_horiz(a, Rational(1)));
  // exp(X2/2) exp(X1) exp(X2) exp(-X1) exp(X2/2)
  const ZigZag five{{{0, h}, {1, 0}, {0, 1}, {-1, 0}, {0, h}}};
  EXPECT_EQ(to_first(zigzag_endpoint(five)), (Pt1<Rational>{{0, 2, -1, h, 0}}));
}

TEST(GMap, FrozenValues) {
  const Rational a = make_rational(5, 3), b = make_rational(-2, 7), c = make_rational(2, 9);
  EXPECT_EQ(gmap(a, a, c), (std::array<Rational, 3>{-a / 2, a * a / 6, a / 3}));
  EXPECT_EQ(gmap(Rational(0), Rational(0), c), (std::array<Rational, 3>{0, 0, 0}));
  EXPECT_EQ(gmap(a, b, Rational(0)), (std::array<Rational, 3>{-b / 2, b * b / 6, b / 3}));
}

TEST(GMap, InversionRoundTrip) {
  const auto g = gmap(Rational(1), Rational(2), h);
  const auto pre = gmap_invert(g[0], g[1], g[2]);
  EXPECT_EQ(pre.a, Rational(1));
  EXPECT_EQ(pre.b, Rational(2));
  EXPECT_EQ(pre.c, h);
  std::mt19937_64 rng(1);
  for (int k = 0; k < 300; ++k) {
    const Rational a = random_rational(rng, -3, 3, 7), b = random_rational(rng, -3, 3, 7);
    const Rational c = random_rational(rng, 0, 1, 9);
    if (a == b || sgn(c) == 0 || c == 1) continue;
    const auto p = gmap(a, b, c);
    const auto r = gmap_invert(p[0], p[1], p[2]);
    EXPECT_EQ(r.a, a);
    EXPECT_EQ(r.b, b);
    EXPECT_EQ(r.c, c);
  }
}

TEST(GMap, InversionFailures) {
  try {
    gmap_invert(Rational(1), Rational(0), Rational(0));  // P^ = -2 < 0
    FAIL();
  } catch (const GmapInversionError& e) {
    EXPECT_EQ(e.reason, InversionFailure::OutsideParaboloid);
  }
  try {
    gmap_invert(Rational(3), Rational(100), Rational(-2));  // 2x + 3z = 0
    FAIL();
  } catch (const GmapInversionError& e) {
    EXPECT_EQ(e.reason, InversionFailure::OnCriticalPlane);
  }
}

TEST(MemberS, Examples) {
  const auto m = member_S(P2(0, 1, 0, 1, 0));
  EXPECT_EQ(m.verdict, SVerdict::ParaboloidInterior);
  EXPECT_EQ(m.p_value, Rational(1));
  const auto c = member_S(P2(0, 1, 0, 0, 0));
  EXPECT_EQ(c.verdict, SVerdict::BoundaryCurve);
  EXPECT_EQ(c.curve_residual, Rational(0));
  EXPECT_EQ(member_S(P2(0, -1, 0, 0, 0)).verdict, SVerdict::Outside);
  EXPECT_EQ(member_S(P2(0, 0, 0, 0, 0)).verdict, SVerdict::BoundaryCurve);
  EXPECT_EQ(member_S(P2(5, 0, 0, 0, 0)).verdict, SVerdict::BoundaryCurve);
}

TEST(MemberS, ZigZagEndpointsAreNeverOutside) {
  std::mt19937_64 rng(2);
  for (int k = 0; k < 500; ++k) {
    const auto zz = random_w_zigzag(rng, 1 + k % 7);
    EXPECT_NE(member_S(zigzag_endpoint(zz)).verdict, SVerdict::Outside);
  }
}

TEST(MemberS, InverseOfInteriorIsOutside) {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 200; ++k) EXPECT_EQ(member_S(inv(random_s_interior(rng))).verdict, SVerdict::Outside);
}

TEST(MemberS, ClosureAndDilationRandom) {
  std::mt19937_64 rng(4);
  for (int k = 0; k < 300; ++k) {
    const auto x = random_s_interior(rng), y = random_s_interior(rng);
    EXPECT_EQ(member_S(mul2(x, y)).verdict, SVerdict::ParaboloidInterior);
    const Rational l = test_support::random_positive(rng);
    EXPECT_EQ(member_S(dilate2(l, x)).verdict, SVerdict::ParaboloidInterior);
  }
}

TEST(Factor, RoundTrips) {
  const auto x = P2(0, 1, 0, 1, 0);
  const ZigZag zz = factor_in_W6(x);
  EXPECT_LE(zz.steps.size(), 6u);
  EXPECT_EQ(zigzag_endpoint(zz), x);
  for (const auto& s : zz.steps) EXPECT_GE(sgn(s.b), 0);

  std::mt19937_64 rng(5);
  for (int k = 0; k < 300; ++k) {
    const auto p = random_s_interior(rng);
    const ZigZag f = factor_in_W6(p);
    EXPECT_LE(f.steps.size(), 6u);
    EXPECT_EQ(zigzag_endpoint(f), p);
    for (const auto& s : f.steps) EXPECT_GE(sgn(s.b), 0);
  }
}

TEST(Factor, KnownThreeStepZigZag) {
  const ZigZag z3{{{1, h}, {-2, 1}, {make_rational(1, 3), make_rational(1, 4)}}};
  const auto p = zigzag_endpoint(z3);
  ASSERT_EQ(member_S(p).verdict, SVerdict::ParaboloidInterior);
  EXPECT_EQ(zigzag_endpoint(factor_in_W6(p)), p);
}

TEST(Factor, CriticalPlanePoints) {
  // 2 x2 x3 + 3 x5 = 0 with P > 0.
  std::mt19937_64 rng(6);
  int tested = 0;
  for (int k = 0; k < 2000 && tested < 50; ++k) {
    auto p = random_s_interior(rng);
    p[4] = -2 * p[1] * p[2] / 3;
    if (member_S(p).verdict != SVerdict::ParaboloidInterior) continue;
    ++tested;
    const ZigZag f = factor_in_W6(p);
    EXPECT_LE(f.steps.size(), 6u);
    EXPECT_EQ(zigzag_endpoint(f), p);
  }
  EXPECT_GT(tested, 10);
}

TEST(Factor, RejectsNonInterior) {
  EXPECT_THROW(factor_in_W6(P2(0, 1, 0, 0, 0)), NotInInterior);
  EXPECT_THROW(factor_in_W6(P2(0, -1, 0, 1, 0)), NotInInterior);
}

TEST(Wedge, Examples) {
  EXPECT_TRUE(member_wedge(Pt1<Rational>{{0, 2, -1, h, 0}}));
  EXPECT_FALSE(member_wedge(Pt1<Rational>{{0, 0, 0, 0, 1}}));
  std::mt19937_64 rng(7);
  for (int k = 0; k < 200; ++k) {
    const Rational a = random_rational(rng, -3, 3, 5), b = random_rational(rng, -3, 3, 5);
    const Rational c = test_support::random_positive(rng);
    const Pt1<Rational> p{{b, c, -a * c, a * a * c / 2, 0}};
    EXPECT_TRUE(member_wedge(p));
    EXPECT_EQ(2 * p[1] * p[3], p[2] * p[2]);
  }
}

TEST(W3, SingleStep) {
  const auto r = w3_separation(ZigZag{{{0, 0}, {1, 1}}});
  EXPECT_EQ(r.q4, make_rational(1, 6));
  EXPECT_EQ(r.lower_bound, make_rational(1, 24));
}

TEST(W3, MalformedRejected) {
  EXPECT_THROW(w3_separation(ZigZag{}), MalformedZigZag);
  EXPECT_THROW(w3_separation(ZigZag{{{0, 0}, {0, 0}}}), MalformedZigZag);
  EXPECT_THROW(w3_separation(ZigZag{{{0, 1}, {1, 1}}}), MalformedZigZag);
  EXPECT_THROW(w3_separation(ZigZag{{{0, 0}, {1, 2}}}), MalformedZigZag);
}

TEST(Reports, PointIdentity) {
  const auto r = verify_point_F23();
  EXPECT_TRUE(r.ok());
  const std::array<std::array<Rational, 5>, 5> expect{{{0, 1, 0, 0, 1},
                                                       {1, 0, make_rational(-3, 2), 1, make_rational(-9, 8)},
                                                       {0, 1, -1, h, -h},
                                                       {1, 0, -h, 0, make_rational(-1, 8)},
                                                       {0, 1, 0, 0, 0}}};
  EXPECT_EQ(r.tangents, expect);
}

TEST(Reports, F24Interior) {
  const auto r = verify_wedge_interior_F24();
  EXPECT_TRUE(r.product_identity);
  EXPECT_EQ(r.rank, 8u);
}

TEST(Boundary, SurfacePointOffTheCurve) {
  // exp(-3/2 X1) exp(X1 + 2 X2): P = 0, x2 > 0, curve residual 1.
  const ZigZag z{{{make_rational(-3, 2), 0}, {1, 2}}};
  const auto p = zigzag_endpoint(z);
  EXPECT_EQ(p, P2(-h, 2, 2, make_rational(13, 12), make_rational(-5, 3)));
  const auto m = member_S(p);
  EXPECT_EQ(m.p_value, Rational(0));
  EXPECT_EQ(m.curve_residual, Rational(1));
  EXPECT_EQ(m.verdict, SVerdict::BoundarySurface);
  const ZigZag f = factor_boundary(p);
  EXPECT_LE(f.steps.size(), 3u);
  EXPECT_EQ(zigzag_endpoint(f), p);
}

TEST(Boundary, FactorRoundTripsRandom) {
  std::mt19937_64 rng(8);
  for (int k = 0; k < 300; ++k) {
    const Rational s = random_rational(rng, -3, 3, 8), a = random_rational(rng, -3, 3, 8),
                   t = random_rational(rng, -3, 3, 8);
    const Rational b = test_support::random_positive(rng);
    const auto p = zigzag_endpoint(ZigZag{{{s, 0}, {a, b}, {t, 0}}});
    const auto v = member_S(p).verdict;
    EXPECT_TRUE(v == SVerdict::BoundarySurface || v == SVerdict::BoundaryCurve);
    const ZigZag f = factor_boundary(p);
    EXPECT_LE(f.steps.size(), 3u);
    EXPECT_EQ(zigzag_endpoint(f), p);
    for (const auto& st : f.steps) EXPECT_GE(sgn(st.b), 0);
  }
}

TEST(Boundary, AxisAndRejections) {
  EXPECT_EQ(zigzag_endpoint(factor_boundary(P2(3, 0, 0, 0, 0))), P2(3, 0, 0, 0, 0));
  EXPECT_TRUE(factor_boundary(P2(0, 0, 0, 0, 0)).steps.empty());
  EXPECT_THROW(factor_boundary(P2(0, 1, 0, 1, 0)), std::domain_error);   // interior
  EXPECT_THROW(factor_boundary(P2(0, -1, 0, 0, 0)), std::domain_error);  // outside
}
