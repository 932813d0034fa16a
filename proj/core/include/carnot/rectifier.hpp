#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "carnot/lie.hpp"
#include "carnot/linalg.hpp"

namespace carnot {

enum class Stage { PreTangent, PostTangent };

// I: invariant directions (a subspace); M: monotone directions, each reduced
// modulo I and scaled so its first nonzero coefficient is +-1.
struct DirectionState {
  AlgebraPtr algebra;
  Subspace invariants;
  std::vector<LieVec> monotone;
  Stage stage = Stage::PreTangent;

  static DirectionState initial(AlgebraPtr alg, const std::vector<LieVec>& invariant,
                                const std::vector<LieVec>& monotone);
  std::vector<LieVec> invariant_basis() const;
  bool in_invariants(const LieVec& v) const { return invariants.contains(v.coeffs()); }
  bool has_monotone(const LieVec& v) const;
  friend bool operator==(const DirectionState& a, const DirectionState& b);
};

enum class RuleKind { Close, Adjoint, OppositePair, Promote };
std::string to_string(RuleKind k);

struct LogEntry {
  RuleKind rule;
  std::vector<LieVec> premises;   // Close: (u, v); Adjoint: (Y, X); OppositePair: (X); Promote: moved
  std::vector<LieVec> expansion;  // Adjoint: t^k coefficients of e^{t ad Y} X, reduced modulo I
  int top_degree = -1;
  std::vector<LieVec> new_invariants;
  std::vector<LieVec> new_monotone;
};

struct DerivationLog {
  std::vector<LogEntry> entries;
};

class ReplayError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InconsistentInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Which monotone directions become invariant in every tangent.
struct PromotionPolicy {
  std::string name;
  std::function<bool(const LieVec& reduced, const DirectionState&)> promote;
  static PromotionPolicy non_horizontal();  // V1 component zero modulo I
  static PromotionPolicy none();
};

// Each rule returns the new state and appends what it did to `log` (if given).
DirectionState close_invariants(DirectionState s, DerivationLog* log = nullptr);
DirectionState adjoint_rule(DirectionState s, const LieVec& y, const LieVec& x, DerivationLog* log = nullptr);
DirectionState opposite_pairs(DirectionState s, DerivationLog* log = nullptr);
DirectionState tangent_promote(DirectionState s, DerivationLog* log = nullptr,
                               const PromotionPolicy& policy = PromotionPolicy::non_horizontal());

struct RunOptions {
  PromotionPolicy promotion = PromotionPolicy::non_horizontal();
  bool promote = true;
  std::size_t max_passes = 1000;
};

struct Verdict {
  enum class Kind { VerticalHalfSpace, Stuck };
  Kind kind = Kind::Stuck;
  std::vector<int> residual_layers;  // layers k >= 2 not contained in I
  bool normal_became_invariant = false;
  DirectionState initial;
  DirectionState final_state;
  DerivationLog log;
  std::string scope;
  std::vector<std::string> citations;
};
std::string to_string(Verdict::Kind k);

Verdict run(const AlgebraPtr& alg, const LieVec& normal, const std::vector<LieVec>& invariant,
            const RunOptions& opts = {});
Verdict run(const AlgebraPtr& alg, std::size_t normal_index, const std::vector<std::size_t>& invariant_indices,
            const RunOptions& opts = {});

// Re-derives every entry from `initial`; throws ReplayError on the first
// entry whose premises or conclusions do not check out.
DirectionState replay(const DirectionState& initial, const DerivationLog& log,
                      const PromotionPolicy& policy = PromotionPolicy::non_horizontal());

}  // namespace carnot
