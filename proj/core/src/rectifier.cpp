#include "carnot/rectifier.hpp"

#include <algorithm>

namespace carnot {

namespace {

LieVec normalize(LieVec v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (sgn(v[i]) == 0) continue;
    v *= Rational(1 / abs(v[i]));
    break;
  }
  return v;
}

// Re-reduce M modulo I, dropping zeros and duplicates.
void reduce_monotone(DirectionState& s) {
  std::vector<LieVec> out;
  for (const auto& m : s.monotone) {
    LieVec r = normalize(reduce_mod(s.invariants, m));
    if (r.is_zero()) continue;
    if (std::none_of(out.begin(), out.end(), [&](const LieVec& o) { return o == r; })) out.push_back(r);
  }
  s.monotone = std::move(out);
}

bool add_invariant(DirectionState& s, const LieVec& v) {
  if (!s.invariants.insert(v.coeffs())) return false;
  reduce_monotone(s);
  return true;
}

bool add_monotone(DirectionState& s, const LieVec& v) {
  LieVec r = normalize(reduce_mod(s.invariants, v));
  if (r.is_zero() || s.has_monotone(r)) return false;
  s.monotone.push_back(r);
  return true;
}

}  // namespace

DirectionState DirectionState::initial(AlgebraPtr alg, const std::vector<LieVec>& invariant,
                                       const std::vector<LieVec>& monotone) {
  DirectionState s;
  s.algebra = alg;
  s.invariants = Subspace(alg->dim());
  for (const auto& v : invariant) {
    if (v.algebra() != alg) throw AlgebraMismatch("invariant direction from another algebra");
    s.invariants.insert(v.coeffs());
  }
  for (const auto& v : monotone) {
    if (v.algebra() != alg) throw AlgebraMismatch("monotone direction from another algebra");
    add_monotone(s, v);
  }
  return s;
}

std::vector<LieVec> DirectionState::invariant_basis() const {
  std::vector<LieVec> b;
  for (const auto& row : invariants.basis()) b.emplace_back(algebra, row);
  return b;
}

bool DirectionState::has_monotone(const LieVec& v) const {
  const LieVec r = normalize(reduce_mod(invariants, v));
  return std::any_of(monotone.begin(), monotone.end(), [&](const LieVec& m) { return m == r; });
}

bool operator==(const DirectionState& a, const DirectionState& b) {
  if (a.algebra != b.algebra || a.stage != b.stage || !(a.invariants == b.invariants)) return false;
  if (a.monotone.size() != b.monotone.size()) return false;
  for (const auto& m : a.monotone)
    if (!b.has_monotone(m)) return false;
  return true;
}

std::string to_string(RuleKind k) {
  switch (k) {
    case RuleKind::Close: return "close";
    case RuleKind::Adjoint: return "adjoint";
    case RuleKind::OppositePair: return "opposite-pair";
    case RuleKind::Promote: return "promote";
  }
  return "?";
}

std::string to_string(Verdict::Kind k) {
  return k == Verdict::Kind::VerticalHalfSpace ? "VerticalHalfSpace" : "Stuck";
}

PromotionPolicy PromotionPolicy::non_horizontal() {
  return {"non-horizontal", [](const LieVec& v, const DirectionState& s) {
            for (auto i : s.algebra->layer_indices(1))
              if (sgn(v[i]) != 0) return false;
            return true;
          }};
}

PromotionPolicy PromotionPolicy::none() {
  return {"none", [](const LieVec&, const DirectionState&) { return false; }};
}

DirectionState close_invariants(DirectionState s, DerivationLog* log) {
  bool grew = true;
  while (grew) {
    grew = false;
    const auto basis = s.invariant_basis();
    for (std::size_t i = 0; i < basis.size() && !grew; ++i)
      for (std::size_t j = i + 1; j < basis.size() && !grew; ++j) {
        const LieVec b = bracket(basis[i], basis[j]);
        if (!add_invariant(s, b)) continue;
        if (log) log->entries.push_back({RuleKind::Close, {basis[i], basis[j]}, {}, -1, {b}, {}});
        grew = true;  // basis changed; restart from the new one
      }
  }
  return s;
}

DirectionState adjoint_rule(DirectionState s, const LieVec& y, const LieVec& x, DerivationLog* log) {
  if (!s.in_invariants(y)) throw std::invalid_argument("adjoint rule: Y is not an invariant direction");
  if (!s.has_monotone(x)) throw std::invalid_argument("adjoint rule: X is not a monotone direction");
  LogEntry e{RuleKind::Adjoint, {y, x}, {}, -1, {}, {}};
  const TPoly p = exp_ad(y, x);
  for (const auto& c : p.coeffs) e.expansion.push_back(reduce_mod(s.invariants, c));
  // Odd top degree: both limits t -> +-inf give monotone directions, so the
  // coefficient is invariant and can be removed. Even top degree: only
  // t -> +inf is available; record it and stop.
  for (;;) {
    int k = -1;
    for (int d = static_cast<int>(p.coeffs.size()) - 1; d >= 1; --d)
      if (!reduce_mod(s.invariants, p.coeffs[d]).is_zero()) {
        k = d;
        break;
      }
    if (e.top_degree < 0) e.top_degree = k;
    if (k < 1) break;
    const LieVec top = reduce_mod(s.invariants, p.coeffs[k]);
    if (k % 2 == 1) {
      add_invariant(s, top);
      e.new_invariants.push_back(top);
    } else {
      if (add_monotone(s, top)) e.new_monotone.push_back(normalize(top));
      break;
    }
  }
  if (log && (!e.new_invariants.empty() || !e.new_monotone.empty())) log->entries.push_back(std::move(e));
  return s;
}

DirectionState opposite_pairs(DirectionState s, DerivationLog* log) {
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& m : s.monotone) {
      if (!s.has_monotone(-m)) continue;
      const LieVec v = m;
      add_invariant(s, v);
      if (log) log->entries.push_back({RuleKind::OppositePair, {v}, {}, -1, {v}, {}});
      grew = true;
      break;
    }
  }
  return s;
}

DirectionState tangent_promote(DirectionState s, DerivationLog* log, const PromotionPolicy& policy) {
  if (s.stage != Stage::PreTangent) throw std::logic_error("tangent promotion already applied");
  s.stage = Stage::PostTangent;
  std::vector<LieVec> moved;
  for (const auto& m : s.monotone)
    if (policy.promote(m, s)) moved.push_back(m);
  for (const auto& m : moved) add_invariant(s, m);
  if (log) log->entries.push_back({RuleKind::Promote, moved, {}, -1, moved, {}});
  return s;
}

namespace {

DirectionState saturate(DirectionState s, DerivationLog& log, std::size_t max_passes) {
  for (std::size_t pass = 0; pass < max_passes; ++pass) {
    const DirectionState before = s;
    s = close_invariants(std::move(s), &log);
    s = opposite_pairs(std::move(s), &log);
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& y : s.invariant_basis()) {
        for (const auto& x : std::vector<LieVec>(s.monotone)) {
          if (!s.has_monotone(x)) continue;
          const std::size_t n0 = log.entries.size();
          s = adjoint_rule(std::move(s), y, x, &log);
          if (log.entries.size() != n0) changed = true;
        }
        if (changed) break;  // I may have grown; restart over its new basis
      }
    }
    if (s == before) return s;
  }
  throw std::runtime_error("rectifier did not reach a fixed point");
}

}  // namespace

Verdict run(const AlgebraPtr& alg, const LieVec& normal, const std::vector<LieVec>& invariant,
            const RunOptions& opts) {
  Subspace h(alg->dim());
  for (const auto& v : invariant) {
    for (std::size_t i = 0; i < v.size(); ++i)
      if (sgn(v[i]) != 0 && alg->layer_of(i) != 1) throw InconsistentInput("invariant directions must be horizontal");
    h.insert(v.coeffs());
  }
  for (std::size_t i = 0; i < normal.size(); ++i)
    if (sgn(normal[i]) != 0 && alg->layer_of(i) != 1) throw InconsistentInput("normal must be horizontal");
  if (h.contains(normal.coeffs())) throw InconsistentInput("normal lies in the span of the invariant directions");
  h.insert(normal.coeffs());
  if (h.dim() != alg->layer_indices(1).size())
    throw InconsistentInput("normal and invariant directions must span the first layer");

  Verdict v;
  v.initial = DirectionState::initial(alg, invariant, {normal});
  DirectionState s = saturate(v.initial, v.log, opts.max_passes);
  if (opts.promote) {
    s = tangent_promote(std::move(s), &v.log, opts.promotion);
    s = saturate(std::move(s), v.log, opts.max_passes);
  }
  for (int k = 2; k <= alg->step(); ++k)
    for (auto i : alg->layer_indices(k))
      if (!s.in_invariants(LieVec::basis(alg, i))) {
        v.residual_layers.push_back(k);
        break;
      }
  v.normal_became_invariant = s.in_invariants(normal);
  v.kind = v.residual_layers.empty() && !v.normal_became_invariant ? Verdict::Kind::VerticalHalfSpace
                                                                   : Verdict::Kind::Stuck;
  v.final_state = std::move(s);
  v.scope = opts.promote ? "every tangent at almost every point" : "the set itself";
  v.citations = {
      "invariant directions of a monotone set span a Lie subalgebra",
      "if Y is invariant and X monotone then Ad_{exp(tY)} X is monotone for every real t",
      "at almost every point every blow-up is invariant along monotone directions with zero horizontal part",
      "sets whose blow-ups are all vertical half-spaces are intrinsically rectifiable"};
  return v;
}

Verdict run(const AlgebraPtr& alg, std::size_t normal_index, const std::vector<std::size_t>& invariant_indices,
            const RunOptions& opts) {
  if (normal_index >= alg->dim()) throw InconsistentInput("normal index out of range");
  std::vector<LieVec> inv;
  for (auto i : invariant_indices) {
    if (i >= alg->dim()) throw InconsistentInput("invariant index out of range");
    inv.push_back(LieVec::basis(alg, i));
  }
  return run(alg, LieVec::basis(alg, normal_index), inv, opts);
}

DirectionState replay(const DirectionState& initial, const DerivationLog& log, const PromotionPolicy& policy) {
  DirectionState s = initial;
  std::size_t idx = 0;
  auto fail = [&](const std::string& why) {
    throw ReplayError("entry " + std::to_string(idx) + ": " + why);
  };
  for (const auto& e : log.entries) {
    switch (e.rule) {
      case RuleKind::Close: {
        if (e.premises.size() != 2 || e.new_invariants.size() != 1) fail("malformed close entry");
        if (!s.in_invariants(e.premises[0]) || !s.in_invariants(e.premises[1])) fail("bracket of non-invariants");
        const LieVec b = bracket(e.premises[0], e.premises[1]);
        if (!(b == e.new_invariants[0])) fail("bracket mismatch");
        if (!add_invariant(s, b)) fail("close entry added nothing");
        break;
      }
      case RuleKind::Adjoint: {
        if (e.premises.size() != 2) fail("malformed adjoint entry");
        DerivationLog one;
        DirectionState t;
        try {
          t = adjoint_rule(s, e.premises[0], e.premises[1], &one);
        } catch (const std::invalid_argument& ex) {
          fail(ex.what());
        }
        if (one.entries.size() != 1) fail("adjoint entry concluded nothing on replay");
        const auto& r = one.entries[0];
        if (r.top_degree != e.top_degree || r.new_invariants != e.new_invariants || r.new_monotone != e.new_monotone ||
            r.expansion != e.expansion)
          fail("adjoint conclusions differ");
        s = std::move(t);
        break;
      }
      case RuleKind::OppositePair: {
        if (e.premises.size() != 1) fail("malformed opposite-pair entry");
        if (!s.has_monotone(e.premises[0]) || !s.has_monotone(-e.premises[0])) fail("not an opposite pair");
        add_invariant(s, e.premises[0]);
        break;
      }
      case RuleKind::Promote: {
        DerivationLog one;
        DirectionState t;
        try {
          t = tangent_promote(s, &one, policy);
        } catch (const std::logic_error& ex) {
          fail(ex.what());
        }
        if (one.entries[0].new_invariants != e.new_invariants) fail("promoted directions differ");
        s = std::move(t);
        break;
      }
    }
    ++idx;
  }
  return s;
}

}  // namespace carnot
