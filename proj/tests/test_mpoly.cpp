#include <gtest/gtest.h>

#include "carnot/f23.hpp"
#include "carnot/mpoly.hpp"

using namespace carnot;

namespace {
MPoly v(const char* n) { return MPoly::variable(n); }
}  // namespace

TEST(MPoly, Arithmetic) {
  const MPoly x2 = v("x2"), x4 = v("x4");
  const MPoly P = x2.pow(3) * x4 - 2 * x2.pow(2) * v("x3").pow(2);
  EXPECT_TRUE((P - P).is_zero());
  EXPECT_EQ(x2 * (x2.pow(2) * x4), x2.pow(3) * x4);
  EXPECT_EQ((x2 + 1).pow(2), x2 * x2 + 2 * x2 + 1);
  EXPECT_EQ(make_rational(1, 2) * (2 * x2), x2);
}

TEST(MPoly, CanonicalText) {
  const MPoly p = 3 * v("x1").pow(2) * v("x3") - make_rational(1, 2) * v("x2") + 1;
  EXPECT_EQ(p.to_string(), "3/1*x1^2*x3 + -1/2*x2 + 1/1");
  EXPECT_EQ(MPoly().to_string(), "0/1");
  EXPECT_EQ(p.to_string(), MPoly(p).to_string());
}

TEST(MPoly, Derivatives) {
  const MPoly x2 = v("x2"), x3 = v("x3"), x4 = v("x4"), x5 = v("x5");
  const MPoly P = x2.pow(3) * x4 - 2 * x2.pow(2) * x3.pow(2) - 6 * x2 * x3 * x5 - 6 * x5.pow(2);
  EXPECT_EQ(diff(P, "x4"), x2.pow(3));
  EXPECT_TRUE(diff(MPoly(Rational(7)).with_variables({"c"}), "c").is_zero());
  const MPoly x = v("x"), y = v("y"), z = v("z");
  const MPoly Ph = y - 2 * x.pow(2) - 6 * x * z - 6 * z.pow(2);
  EXPECT_EQ(diff(Ph, "y"), MPoly(1));
  EXPECT_THROW(diff(Ph, "w"), UnknownVariable);
}

TEST(MPoly, CoefficientsAndDegrees) {
  const MPoly p = v("x1").pow(2) * v("x2") + 3 * v("x1") - v("x2");
  EXPECT_EQ(coefficient_of(p, "x1", 2), v("x2"));
  EXPECT_EQ(coefficient_of(p, "x1", 1), MPoly(3));
  EXPECT_EQ(coefficient_of(p, "x1", 0), -v("x2"));
  EXPECT_EQ(p.degree_in("x1"), 2u);
  EXPECT_EQ(p.total_degree(), 3u);
}

TEST(MPoly, Evaluation) {
  const MPoly P = paraboloid_poly(Pt2<MPoly>{{v("x1"), v("x2"), v("x3"), v("x4"), v("x5")}});
  std::map<std::string, Rational, std::less<>> at{{"x1", 0}, {"x2", 1}, {"x3", 0}, {"x4", 1}, {"x5", 0}};
  EXPECT_EQ(eval(P, at), Rational(1));
  const Pt1<Rational> a{{0, 2, -1, make_rational(1, 2), 0}};
  EXPECT_EQ(paraboloid_poly_first(a), Rational(2));
}

TEST(MPoly, Det3) {
  PolyMatrix3 id{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  EXPECT_EQ(det3(id), MPoly(1));
  const MPoly a = v("a"), b = v("b");
  PolyMatrix3 rep{{{a, b, 1}, {a, b, 1}, {b, 2, a}}};
  EXPECT_TRUE(det3(rep).is_zero());
}

TEST(RatFunc, SubstitutionAndEquality) {
  const MPoly x = v("x"), y = v("y");
  const RatFunc f(x * x - y * y, x - y);
  EXPECT_EQ(f, RatFunc(x + y));
  Assignment id{{"x", RatFunc(x)}, {"y", RatFunc(y)}};
  EXPECT_EQ(subst(f, id), f);
  Assignment sw{{"x", RatFunc(MPoly(1), y)}, {"y", RatFunc(y)}};
  EXPECT_EQ(subst(x * y, sw), RatFunc(MPoly(1)));
  EXPECT_THROW(subst(x * y, Assignment{{"x", RatFunc(y)}}), std::exception);
  EXPECT_THROW(RatFunc(x, MPoly()), ZeroDenominator);
}
