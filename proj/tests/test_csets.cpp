#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "carnot/csets.hpp"
#include "support.hpp"

using namespace carnot;

namespace {
const Rational h = make_rational(1, 2);
Pt2<Rational> P2(Rational a, Rational b, Rational c, Rational d, Rational e) { return Pt2<Rational>{{a, b, c, d, e}}; }
MPoly v(const char* n) { return MPoly::variable(n); }
}  // namespace

TEST(Oracles, ConeMembership) {
  EXPECT_TRUE(cone_ab(0, 1).contains_exact(P2(0, 1, 0, 1, 1)));
  EXPECT_FALSE(cone_ab(0, 1).contains_exact(P2(0, 1, 0, 1, 2)));
  for (auto [a, b] : std::vector<std::pair<int, int>>{{1, 0}, {0, 1}, {1, 1}, {2, 5}})
    EXPECT_TRUE(cone_ab(a, b).contains_exact(P2(0, 0, 0, 0, 0)));
  // The x2 = 0 slice keeps only x4 >= 0.
  EXPECT_FALSE(cone_ab(1, 0).contains_exact(P2(-1, 0, 0, -1, 0)));
  EXPECT_TRUE(cone_ab(1, 0).contains_exact(P2(-1, 0, 0, 1, 0)));
  EXPECT_FALSE(cone_ab(0, 1).contains_exact(P2(0, 0, 1, -1, 0)));
  EXPECT_THROW(cone_ab(0, 0), std::invalid_argument);
  EXPECT_THROW(cone_ab(-1, 1), std::invalid_argument);
}

TEST(Oracles, ExactAndDoubleAgree) {
  std::mt19937_64 rng(1);
  for (const char* name : {"halfspace", "E1", "E2", "S", "coneAB:1:1", "coneAB:1:0", "pathE:6"}) {
    const SetOracle o = resolve_oracle(name);
    for (int k = 0; k < 500; ++k) {
      Pt2<Rational> p;
      for (auto& x : p.x) x = random_dyadic(rng, 2, 3);
      const bool e = o.contains_exact(p);
      const bool d = o.contains(convert<double>(p));
      // Dyadic grid points can land on the boundary; only flag clear disagreements.
      if (e != d) {
        Pt2<Rational> q = p;
        q[0] += make_rational(1, 1024);
        EXPECT_EQ(o.contains_exact(q), o.contains(convert<double>(q))) << name;
      }
    }
  }
  EXPECT_THROW(resolve_oracle("nope"), std::invalid_argument);
  EXPECT_THROW(resolve_oracle("pathE:99"), std::invalid_argument);
}

TEST(Certificates, ConeZeroOne) {
  const auto r = cone_ab_certificate(Rational(0), Rational(1));
  EXPECT_TRUE(r.ok());
  const MPoly x2 = v("x2"), x4 = v("x4"), x5 = v("x5");
  EXPECT_EQ(r.discriminant, x2.pow(2) * (x5.pow(2) - 6 * x2.pow(3) * x4));
}

TEST(Certificates, ConeOneZeroAndSymbolic) {
  EXPECT_TRUE(cone_ab_certificate(Rational(1), Rational(0)).ok());
  EXPECT_TRUE(cone_ab_certificate(Rational(2), Rational(3)).ok());
  const auto r = cone_ab_certificate(v("alpha"), v("beta"));
  EXPECT_TRUE(r.ok());
  // (a+bx2)(a+3bx2) - (a-bx2)^2 = 6ab x2 + 2b^2 x2^2
  const MPoly a = v("alpha"), b = v("beta"), x2 = v("x2");
  EXPECT_EQ(r.expansion, 6 * a * b * x2 + 2 * b.pow(2) * x2.pow(2));
}

TEST(Certificates, SemigroupPolynomialDerivative) {
  const MPoly x1 = v("x1"), x2 = v("x2"), x3 = v("x3"), x4 = v("x4"), x5 = v("x5");
  const MPoly P = x2.pow(3) * x4 - 2 * x2.pow(2) * x3.pow(2) - 6 * x2 * x3 * x5 - 6 * x5.pow(2);
  const MPoly d = x2_derivative(P);
  EXPECT_EQ(coefficient_of(d, "x1", 1), -2 * x2.pow(2) * x3 - 6 * x2 * x5);
  const MPoly disc = coefficient_of(d, "x1", 1).pow(2) - 4 * coefficient_of(d, "x1", 2) * coefficient_of(d, "x1", 0);
  EXPECT_EQ(disc, -6 * x2.pow(2) * P);
  (void)x1;
}

TEST(Pdi, SymbolicExamples) {
  const MPoly x4 = v("x4"), x5 = v("x5");
  const auto r = pdi_check_F(RatFunc(x5.pow(2), 2 * x4));
  EXPECT_TRUE(r.certified_nonpositive);
  EXPECT_EQ(r.residual, RatFunc(-2 * x5.pow(2), x4.pow(2)));
  EXPECT_TRUE(pdi_check_graph(RatFunc(MPoly(Rational(3)).with_variables({"x3", "x4", "x5"}))).certified_nonpositive);
}

TEST(Pdi, SampledFamily) {
  const double C = 2;
  auto f = [](double s) { return 0.75 * std::tanh(s) + 0.75 * s; };  // f' in [0.75, 1.5] = [., 6/C^2]
  auto df = [](double s) { return 0.75 / std::cosh(s) / std::cosh(s) + 0.75; };
  auto g = [](double s) { return -s * s * s - s; };
  auto dg = [](double s) { return -3 * s * s - 1; };
  const auto F = fg_family(C, f, df, g, dg);
  const auto r = pdi_check_F(F, SampleBox{}, 2000, 9);
  EXPECT_TRUE(r.ok());
  // f' = 2 > 6/C^2 with g' = 0: residual C^2 f'^2 - 6 f' = 4 > 0.
  const auto bad = fg_family(
      C, [](double s) { return 2 * s; }, [](double) { return 2.0; }, [](double) { return 0.0; },
      [](double) { return 0.0; });
  EXPECT_FALSE(pdi_check_F(bad, SampleBox{}, 2000, 9).ok());
}

TEST(Cantor, Levels) {
  const CantorSpec spec = default_cantor_spec(6);
  const Rational a0 = make_rational(1, 16);
  const auto l0 = cantor_level(spec, 0);
  ASSERT_EQ(l0.size(), 2u);
  EXPECT_EQ(l0[0], (Interval{0, (1 - a0) / 2}));
  EXPECT_EQ(l0[1], (Interval{(1 + a0) / 2, 1}));
  for (std::size_t n = 0; n <= 6; ++n) {
    const auto iv = cantor_level(spec, n);
    ASSERT_EQ(iv.size(), std::size_t(1) << (n + 1));
    Rational kept = 0;
    for (const auto& i : iv) kept += i.hi - i.lo;
    EXPECT_EQ(1 - kept, cantor_partial_sum(spec, n));
    // Equal lengths (1 - S_n) / 2^{n+1}.
    for (const auto& i : iv) EXPECT_EQ(i.hi - i.lo, (1 - cantor_partial_sum(spec, n)) / Rational(BigInt(1) << (n + 1)));
  }
  EXPECT_TRUE(certify_total_below_one(default_cantor_spec(20)));
}

TEST(Cantor, BadSpecsRejected) {
  CantorSpec s{[](std::size_t) { return make_rational(1, 2); }, 4, nullptr};
  EXPECT_THROW(validate(s), CantorSpecError);
  CantorSpec neg{[](std::size_t j) { return j == 2 ? Rational(-1, 10) : make_rational(1, 100); }, 4, nullptr};
  EXPECT_THROW(validate(neg), CantorSpecError);
}

TEST(Cantor, SlopeWitness) {
  const CantorSpec spec = default_cantor_spec(21);
  // n = 0 by hand: a1 = 1/25, S0 = 1/16, q = (15/16)/4 = 15/64, half gap = (1/25)/4 = 1/100.
  const auto w0 = slope_witness(spec, 0);
  EXPECT_EQ(w0.q, make_rational(15, 64));
  EXPECT_EQ(w0.qprime_cubed, make_rational(1, 10000));
  EXPECT_EQ(w0.p, make_rational(15, 64) - make_rational(1, 100));
  Rational prev = w0.slope_cubed;
  for (std::size_t n = 0; n <= 20; ++n) {
    const auto w = slope_witness(spec, n);
    EXPECT_EQ(w.boundary_residual, Rational(0));
    EXPECT_GE(w.slope_cubed, w.bound_cubed);
    if (n > 0) EXPECT_GT(w.slope_cubed, prev);
    prev = w.slope_cubed;
  }
  EXPECT_GT(slope_witness(spec, 20).slope, 10 * w0.slope);
  EXPECT_THROW(slope_witness(spec, 21), std::out_of_range);
}

TEST(PathE, Membership) {
  const CantorSpec spec = default_cantor_spec(12);
  const SetOracle E = pathological_E(spec);
  const auto k = cantor_level(spec, 12);
  // Points of K at x5 with x2, x4 >= 0.
  EXPECT_TRUE(E.contains_exact(P2(0, 1, 0, 0, k.front().lo)));
  EXPECT_TRUE(E.contains_exact(P2(0, 1, 0, 1, k.back().hi)));
  // Middle of the first gap, x4 = 0.
  EXPECT_FALSE(E.contains_exact(P2(0, 1, 0, 0, h)));
}

TEST(Blowup, ZSetsAtTheTwoScales) {
  const ZSpec spec;
  for (std::size_t l = 1; l <= 2; ++l) {
    const BigInt nu = z_sequence(spec, 2 * l + 1), nl = z_sequence(spec, 2 * l);
    // Scale s maps t to s^{1/3}... here the blow-up of Z at r is r^{-1} Z, with r^{-3} = n^2.
    const Rational up = blowup_upper_scale(spec, l), lo = blowup_lower_scale(spec, l);
    EXPECT_EQ(up, Rational(nu * nu));
    EXPECT_EQ(lo, Rational(nl * nl));
  }
  const ZSet z = z_set(spec);
  EXPECT_TRUE(z_contains(z, Rational(0)));
  EXPECT_TRUE(z_contains(z, h));              // (1/8, 1/2]
  EXPECT_TRUE(z_contains(z, -h));             // mirrored
  EXPECT_FALSE(z_contains(z, make_rational(1, 8)));
  EXPECT_FALSE(z_contains(z, make_rational(1, 10)));
}

TEST(Blowup, SandwichedBetweenE1AndE2) {
  std::mt19937_64 rng(4);
  const SetOracle e1 = e1_oracle(), e2 = e2_oracle();
  const ZSpec spec;
  for (const Rational& s : {Rational(1), Rational(64), Rational(4096), make_rational(1, 64)}) {
    const SetOracle b = blowup_oracle(spec, s);
    for (int k = 0; k < 2000; ++k) {
      Pt2<Rational> p;
      for (auto& x : p.x) x = random_dyadic(rng, 2, 5);
      if (e1.contains_exact(p)) EXPECT_TRUE(b.contains_exact(p));
      if (b.contains_exact(p)) EXPECT_TRUE(e2.contains_exact(p));
    }
  }
  ZSpec only_zero{ZSpec::Kind::OnlyZero};
  ZSpec whole{ZSpec::Kind::WholeLine};
  for (int k = 0; k < 2000; ++k) {
    Pt2<Rational> p;
    for (auto& x : p.x) x = random_dyadic(rng, 2, 5);
    EXPECT_EQ(blowup_oracle(only_zero, Rational(8)).contains_exact(p), e1.contains_exact(p));
    EXPECT_EQ(blowup_oracle(whole, Rational(8)).contains_exact(p), e2.contains_exact(p));
  }
}

TEST(Monotonicity, HalfspacePassesComplementFails) {
  MonotonicityOptions o;
  o.n_points = 500;
  EXPECT_TRUE(monotonicity_test(halfspace_oracle(), o).passed());
  const auto bad = monotonicity_test(halfspace_complement_oracle(), o);
  EXPECT_GT(bad.violations, 0u);
  ASSERT_TRUE(bad.first_violation.has_value());
}

TEST(Monotonicity, ConesAndSemigroup) {
  MonotonicityOptions o;
  o.n_points = 300;
  for (const char* n : {"coneAB:1:0", "coneAB:0:1", "coneAB:1:1", "S", "E1", "E2"})
    EXPECT_TRUE(monotonicity_test(resolve_oracle(n), o).passed()) << n;
}

TEST(Monotonicity, Deterministic) {
  MonotonicityOptions o;
  o.n_points = 200;
  o.seed = 77;
  const auto a = monotonicity_test(resolve_oracle("E1"), o);
  const auto b = monotonicity_test(resolve_oracle("E1"), o);
  EXPECT_EQ(a.checks, b.checks);
  EXPECT_EQ(a.rejected, b.rejected);
}
