#include <gtest/gtest.h>

#include <algorithm>

#include "carnot/free_lie.hpp"
#include "carnot/rectifier.hpp"

using namespace carnot;

namespace {
LieVec X(const AlgebraPtr& a, std::size_t i) { return LieVec::basis(a, i - 1); }

std::vector<LieVec> first_layer_except(const AlgebraPtr& a, std::size_t normal) {
  std::vector<LieVec> v;
  for (auto i : a->layer_indices(1))
    if (i != normal) v.push_back(LieVec::basis(a, i));
  return v;
}
}  // namespace

TEST(Rectifier, CloseInvariants) {
  const auto a = free_nilpotent(3, 3).algebra;
  auto s = DirectionState::initial(a, {X(a, 2), X(a, 3)}, {X(a, 1)});
  s = close_invariants(s);
  EXPECT_TRUE(s.in_invariants(bracket(X(a, 2), X(a, 3))));
  EXPECT_TRUE(s.in_invariants(bracket(X(a, 2), bracket(X(a, 2), X(a, 3)))));
  EXPECT_EQ(close_invariants(s), s);
  const auto empty = DirectionState::initial(a, {}, {X(a, 1)});
  EXPECT_EQ(close_invariants(empty).invariants.dim(), 0u);
}

TEST(Rectifier, AdjointRuleF23) {
  const auto a = f23_algebra();
  // Y = X2 invariant, X = X1 monotone: degree-2 coefficient [X2,[X2,X1]] becomes monotone.
  auto s = DirectionState::initial(a, {X(a, 2)}, {X(a, 1)});
  DerivationLog log;
  s = adjoint_rule(s, X(a, 2), X(a, 1), &log);
  ASSERT_EQ(log.entries.size(), 1u);
  EXPECT_EQ(log.entries[0].top_degree, 2);
  // [X2,X1] = X3 and [X2,X3] = -X5, so the new direction is -X5.
  EXPECT_TRUE(s.has_monotone(-X(a, 5)));
  EXPECT_TRUE(log.entries[0].new_invariants.empty());
  // Y = 0 changes nothing.
  auto s0 = DirectionState::initial(a, {}, {X(a, 1)});
  EXPECT_EQ(adjoint_rule(s0, LieVec(a), X(a, 1)), s0);
}

TEST(Rectifier, AdjointRuleOddDegreeInStepFour) {
  const auto a = f24_algebra();
  auto s = DirectionState::initial(a, {X(a, 2)}, {X(a, 1)});
  DerivationLog log;
  s = adjoint_rule(s, X(a, 2), X(a, 1), &log);
  const LieVec ad3 = bracket(X(a, 2), bracket(X(a, 2), bracket(X(a, 2), X(a, 1))));
  EXPECT_FALSE(ad3.is_zero());
  EXPECT_TRUE(s.in_invariants(ad3));
  // After removing the cubic term the quadratic one is monotone.
  EXPECT_TRUE(s.has_monotone(bracket(X(a, 2), bracket(X(a, 2), X(a, 1)))));
}

TEST(Rectifier, AdjointRulePreconditions) {
  const auto a = f23_algebra();
  auto s = DirectionState::initial(a, {X(a, 2)}, {X(a, 1)});
  EXPECT_THROW(adjoint_rule(s, X(a, 1), X(a, 1)), std::invalid_argument);
  EXPECT_THROW(adjoint_rule(s, X(a, 2), X(a, 3)), std::invalid_argument);
}

TEST(Rectifier, PromotionRules) {
  const auto a = f23_algebra();
  auto s = DirectionState::initial(a, {X(a, 2)}, {X(a, 1), X(a, 5)});
  auto t = tangent_promote(s);
  EXPECT_TRUE(t.in_invariants(X(a, 5)));
  EXPECT_FALSE(t.in_invariants(X(a, 1)));
  EXPECT_TRUE(t.has_monotone(X(a, 1)));
  EXPECT_THROW(tangent_promote(t), std::logic_error);
  const auto n = tangent_promote(s, nullptr, PromotionPolicy::none());
  EXPECT_FALSE(n.in_invariants(X(a, 5)));
  const auto e = tangent_promote(DirectionState::initial(a, {X(a, 2)}, {}));
  EXPECT_EQ(e.invariants.dim(), 1u);
}

TEST(Rectifier, OppositePair) {
  const auto a = f23_algebra();
  auto s = DirectionState::initial(a, {}, {X(a, 3), -X(a, 3), X(a, 1)});
  s = opposite_pairs(s);
  EXPECT_TRUE(s.in_invariants(X(a, 3)));
  EXPECT_FALSE(s.in_invariants(X(a, 1)));
}

TEST(Rectifier, Verdicts) {
  for (std::size_t normal : {0u, 1u}) {
    const auto v3 = run(f23_algebra(), normal, {1 - normal});
    EXPECT_EQ(v3.kind, Verdict::Kind::VerticalHalfSpace);
    EXPECT_EQ(replay(v3.initial, v3.log), v3.final_state);
    const auto v4 = run(f24_algebra(), normal, {1 - normal});
    EXPECT_EQ(v4.kind, Verdict::Kind::VerticalHalfSpace);
    EXPECT_EQ(replay(v4.initial, v4.log), v4.final_state);
  }
  const auto v5 = run(free_nilpotent(2, 5).algebra, 1, {0});
  EXPECT_EQ(v5.kind, Verdict::Kind::Stuck);
  EXPECT_FALSE(v5.residual_layers.empty());
  EXPECT_EQ(v5.residual_layers.back(), 5);
  EXPECT_EQ(replay(v5.initial, v5.log), v5.final_state);
}

TEST(Rectifier, WithoutPromotionStepThreeIsStuck) {
  RunOptions o;
  o.promote = false;
  const auto v = run(f23_algebra(), 1, {0}, o);
  EXPECT_EQ(v.kind, Verdict::Kind::Stuck);
}

TEST(Rectifier, InconsistentInput) {
  const auto a = f23_algebra();
  EXPECT_THROW(run(a, 0, {0}), InconsistentInput);
  EXPECT_THROW(run(a, 0, {}), InconsistentInput);
  EXPECT_THROW(run(a, 0, {2}), InconsistentInput);
}

TEST(Rectifier, BasisIndependence) {
  for (auto [r, s] : std::vector<std::pair<int, int>>{{3, 2}, {3, 3}, {2, 4}}) {
    const auto a = free_nilpotent(r, s).algebra;
    for (std::size_t normal = 0; normal < std::size_t(r); ++normal) {
      auto inv = first_layer_except(a, normal);
      const auto base = run(a, X(a, normal + 1), inv);
      std::reverse(inv.begin(), inv.end());
      EXPECT_EQ(run(a, X(a, normal + 1), inv).kind, base.kind);
      // A different basis of the same span, and a rescaled normal.
      if (inv.size() >= 2) {
        std::vector<LieVec> mixed{inv[0] + inv[1], inv[0] - 2 * inv[1]};
        for (std::size_t k = 2; k < inv.size(); ++k) mixed.push_back(inv[k]);
        const auto m = run(a, 3 * X(a, normal + 1) + inv[0], mixed);
        EXPECT_EQ(m.kind, base.kind);
        EXPECT_EQ(m.residual_layers, base.residual_layers);
      }
    }
  }
}

TEST(Rectifier, ReplayDetectsTampering) {
  const auto v = run(f24_algebra(), 1, {0});
  ASSERT_FALSE(v.log.entries.empty());
  DerivationLog bad = v.log;
  auto it = std::find_if(bad.entries.begin(), bad.entries.end(),
                         [](const LogEntry& e) { return e.rule == RuleKind::Adjoint; });
  ASSERT_NE(it, bad.entries.end());
  it->premises[0] = it->premises[1];  // Y := X, not invariant
  EXPECT_THROW(replay(v.initial, bad), ReplayError);
  DerivationLog reordered = v.log;
  std::reverse(reordered.entries.begin(), reordered.entries.end());
  EXPECT_THROW(replay(v.initial, reordered), std::exception);
}

TEST(Rectifier, InvariantsOnlyGrow) {
  const auto v = run(free_nilpotent(3, 3).algebra, 0, {1, 2});
  DirectionState s = v.initial;
  std::size_t prev = s.invariants.dim();
  for (const auto& e : v.log.entries) {
    DerivationLog one;
    one.entries.push_back(e);
    s = replay(s, one);
    EXPECT_GE(s.invariants.dim(), prev);
    prev = s.invariants.dim();
  }
  EXPECT_EQ(s, v.final_state);
}
