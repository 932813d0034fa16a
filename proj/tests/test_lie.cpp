#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "carnot/free_lie.hpp"
#include "carnot/lie.hpp"
#include "support.hpp"

using namespace carnot;

namespace {
LieVec X(const AlgebraPtr& a, std::size_t i) { return LieVec::basis(a, i - 1); }

LieVec random_vec(std::mt19937_64& rng, const AlgebraPtr& a) {
  LieVec v(a);
  for (std::size_t i = 0; i < a->dim(); ++i) v[i] = random_rational(rng, -3, 3, 5);
  return v;
}
}  // namespace

TEST(Lie, F23Brackets) {
  const auto a = f23_algebra();
  EXPECT_EQ(bracket(X(a, 2), X(a, 1)), X(a, 3));
  EXPECT_EQ(bracket(X(a, 1), X(a, 2)), -X(a, 3));
  EXPECT_EQ(bracket(X(a, 3), X(a, 1)), X(a, 4));
  EXPECT_EQ(bracket(X(a, 3), X(a, 2)), X(a, 5));
  EXPECT_TRUE(bracket(X(a, 4), X(a, 1)).is_zero());
  EXPECT_TRUE(bracket(X(a, 2), X(a, 2)).is_zero());
}

TEST(Lie, F24Basis) {
  const auto a = f24_algebra();
  ASSERT_EQ(a->dim(), 8u);
  EXPECT_EQ(bracket(X(a, 4), X(a, 1)), X(a, 6));
  EXPECT_EQ(bracket(X(a, 4), X(a, 2)), X(a, 7));
  EXPECT_EQ(bracket(X(a, 5), X(a, 2)), X(a, 8));
  EXPECT_EQ(bracket(X(a, 5), X(a, 1)), X(a, 7));
}

TEST(Lie, FreeDimensions) {
  // Witt's formula: rank 2 gives 2,1,2,3,6 per layer; rank 3 gives 3,3,8,18.
  EXPECT_EQ(free_nilpotent(2, 5).algebra->dim(), 14u);
  EXPECT_EQ(free_nilpotent(3, 3).algebra->dim(), 14u);
  EXPECT_EQ(free_nilpotent(3, 4).algebra->dim(), 32u);
  EXPECT_THROW(free_nilpotent(1, 3), std::invalid_argument);
}

TEST(Lie, JacobiAndAntisymmetryRandom) {
  std::mt19937_64 rng(11);
  for (const auto& alg : {f23_algebra(), f24_algebra(), free_nilpotent(3, 3).algebra}) {
    for (int k = 0; k < 50; ++k) {
      const LieVec u = random_vec(rng, alg), v = random_vec(rng, alg), w = random_vec(rng, alg);
      EXPECT_EQ(bracket(u, v), -bracket(v, u));
      EXPECT_TRUE((bracket(u, bracket(v, w)) + bracket(v, bracket(w, u)) + bracket(w, bracket(u, v))).is_zero());
    }
  }
}

TEST(Lie, ExpAdF23) {
  const auto a = f23_algebra();
  // Brute-force oracle: coefficients ad^k / k!.
  const TPoly p = exp_ad(X(a, 1), X(a, 2));
  ASSERT_GE(p.coeffs.size(), 3u);
  EXPECT_EQ(p.coeffs[0], X(a, 2));
  EXPECT_EQ(p.coeffs[1], -X(a, 3));
  EXPECT_EQ(p.coeffs[2], make_rational(1, 2) * X(a, 4));
  EXPECT_EQ(p.degree(), 2);
  EXPECT_EQ(exp_ad(LieVec(a), X(a, 2)).degree(), 0);
  EXPECT_EQ(exp_ad(X(a, 1), X(a, 1)).degree(), 0);
  EXPECT_EQ(p.eval(Rational(2)), X(a, 2) - 2 * X(a, 3) + 2 * X(a, 4));
}

TEST(Lie, BchF23) {
  const auto a = f23_algebra();
  const LieVec expect = X(a, 1) + X(a, 2) - make_rational(1, 2) * X(a, 3) + make_rational(1, 12) * X(a, 4) -
                        make_rational(1, 12) * X(a, 5);
  EXPECT_EQ(bch(X(a, 1), X(a, 2)), expect);
  std::mt19937_64 rng(3);
  const LieVec u = random_vec(rng, a);
  EXPECT_EQ(bch(u, LieVec(a)), u);
  EXPECT_TRUE(bch(u, -u).is_zero());
}

TEST(Lie, BchAssociativeRandom) {
  std::mt19937_64 rng(4);
  for (const auto& alg : {f23_algebra(), f24_algebra()})
    for (int k = 0; k < 30; ++k) {
      const LieVec u = random_vec(rng, alg), v = random_vec(rng, alg), w = random_vec(rng, alg);
      EXPECT_EQ(bch(bch(u, v), w), bch(u, bch(v, w)));
    }
}

TEST(Lie, BchRejectsStepFive) {
  const auto a = free_nilpotent(2, 5).algebra;
  EXPECT_THROW(bch(X(a, 1), X(a, 2)), std::invalid_argument);
}

TEST(Lie, DilationIsAutomorphism) {
  const auto a = f24_algebra();
  EXPECT_EQ(dilate_alg(Rational(2), X(a, 3)), 4 * X(a, 3));
  std::mt19937_64 rng(8);
  for (int k = 0; k < 30; ++k) {
    const LieVec u = random_vec(rng, a), v = random_vec(rng, a);
    const Rational l = test_support::random_positive(rng);
    EXPECT_EQ(dilate_alg(Rational(1), u), u);
    EXPECT_EQ(dilate_alg(l, bch(u, v)), bch(dilate_alg(l, u), dilate_alg(l, v)));
    EXPECT_EQ(dilate_alg(l, bracket(u, v)), bracket(dilate_alg(l, u), dilate_alg(l, v)));
  }
}

TEST(Lie, MixedAlgebrasRejected) {
  EXPECT_THROW(bracket(X(f23_algebra(), 1), X(f24_algebra(), 1)), AlgebraMismatch);
}

TEST(Lie, TableRoundTrip) {
  const auto a = f24_algebra();
  std::istringstream in(a->to_table());
  const auto b = CarnotAlgebra::from_table(in);
  ASSERT_EQ(b->dim(), a->dim());
  for (std::size_t i = 0; i < a->dim(); ++i)
    for (std::size_t j = 0; j < a->dim(); ++j) EXPECT_EQ(a->bracket_of(i, j), b->bracket_of(i, j));
}

TEST(Lie, InvalidTablesRejected) {
  // Jacobi fails: [X2,X1] = X3, [X3,X1] = X4 but declared layers break grading.
  std::istringstream bad_grading("dim 3\nlayers 1 1 1\n2 1 0 0 1\n");
  EXPECT_THROW(CarnotAlgebra::from_table(bad_grading), InvalidAlgebra);
  std::istringstream not_generated("dim 3\nlayers 1 1 2\n");
  EXPECT_THROW(CarnotAlgebra::from_table(not_generated), InvalidAlgebra);
}

TEST(Linalg, SubspaceReduction) {
  Subspace s(3);
  EXPECT_TRUE(s.insert({1, 1, 0}));
  EXPECT_FALSE(s.insert({2, 2, 0}));
  EXPECT_TRUE(s.insert({0, 1, 1}));
  EXPECT_TRUE(s.contains(QVector{1, 2, 1}));
  EXPECT_FALSE(s.contains(QVector{0, 0, 1}));
  EXPECT_EQ(rank({{1, 2, 3}, {2, 4, 6}, {0, 0, 1}}), 2u);
  const auto c = express({{1, 0, 0}, {1, 1, 0}}, {3, 2, 0});
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ((*c)[0], Rational(1));
  EXPECT_EQ((*c)[1], Rational(2));
  EXPECT_FALSE(express({{1, 0, 0}}, {0, 1, 0}).has_value());
}
