#include "carnot/free_lie.hpp"

#include <mutex>
#include <stdexcept>

namespace carnot {

WordPoly word_commutator(const WordPoly& p, const WordPoly& q) {
  WordPoly r;
  auto acc = [&r](Word w, const Rational& c) {
    auto [it, ins] = r.try_emplace(std::move(w), c);
    if (!ins) {
      it->second += c;
      if (sgn(it->second) == 0) r.erase(it);
    }
  };
  for (const auto& [a, ca] : p)
    for (const auto& [b, cb] : q) {
      Word ab = a, ba = b;
      ab.insert(ab.end(), b.begin(), b.end());
      ba.insert(ba.end(), a.begin(), a.end());
      const Rational c = ca * cb;
      acc(std::move(ab), c);
      acc(std::move(ba), -c);
    }
  return r;
}

namespace {

std::size_t degree_of(const WordPoly& p) { return p.empty() ? 0 : p.begin()->first.size(); }

// Coordinates of homogeneous word polynomials in a shared word index.
struct WordIndex {
  std::map<Word, std::size_t> index;
  std::size_t of(const Word& w) {
    auto [it, ins] = index.try_emplace(w, index.size());
    return it->second;
  }
};

QVector coords(const WordPoly& p, WordIndex& idx, std::size_t len) {
  QVector v(len);
  for (const auto& [w, c] : p) v.at(idx.of(w)) = c;
  return v;
}

std::size_t word_count(int rank, int degree) {
  std::size_t n = 1;
  for (int i = 0; i < degree; ++i) n *= static_cast<std::size_t>(rank);
  return n;
}

FreeNilpotent build(int rank, int step) {
  if (rank < 2 || rank > 8) throw std::invalid_argument("free nilpotent rank must be in [2, 8]");
  if (step < 1 || step > 8) throw std::invalid_argument("free nilpotent step must be in [1, 8]");
  FreeNilpotent f;
  f.rank = rank;
  f.step = step;
  std::vector<int> layers;
  std::vector<std::vector<std::size_t>> by_layer(step + 1);
  std::vector<WordIndex> widx(step + 1);

  for (int g = 0; g < rank; ++g) {
    f.expansions.push_back(WordPoly{{Word{static_cast<std::uint8_t>(g)}, Rational(1)}});
    f.recipe.emplace_back(-1, -1);
    layers.push_back(1);
    by_layer[1].push_back(f.expansions.size() - 1);
  }

  for (int k = 2; k <= step; ++k) {
    std::vector<std::pair<int, int>> cands;
    if (k == 2) {
      for (int j = 1; j < rank; ++j)
        for (int i = 0; i < j; ++i) cands.emplace_back(j, i);
    } else {
      for (auto b : by_layer[k - 1])
        for (int g = 0; g < rank; ++g) cands.emplace_back(static_cast<int>(b), g);
    }
    const std::size_t len = word_count(rank, k);
    Subspace span(len);
    for (auto [a, b] : cands) {
      WordPoly w = word_commutator(f.expansions[a], f.expansions[b]);
      if (w.empty()) continue;
      if (!span.insert(coords(w, widx[k], len))) continue;
      f.expansions.push_back(std::move(w));
      f.recipe.emplace_back(a, b);
      layers.push_back(k);
      by_layer[k].push_back(f.expansions.size() - 1);
    }
  }

  const std::size_t n = f.expansions.size();
  std::vector<CarnotAlgebra::Entry> entries;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      const int k = layers[i] + layers[j];
      if (k > step) continue;
      WordPoly w = word_commutator(f.expansions[i], f.expansions[j]);
      if (w.empty()) continue;
      const std::size_t len = word_count(rank, k);
      std::vector<QVector> gens;
      for (auto b : by_layer[k]) gens.push_back(coords(f.expansions[b], widx[k], len));
      auto c = express(gens, coords(w, widx[k], len));
      if (!c) throw std::logic_error("free nilpotent builder: bracket outside its layer");
      QVector full(n);
      for (std::size_t t = 0; t < by_layer[k].size(); ++t) full[by_layer[k][t]] = (*c)[t];
      entries.push_back({i, j, std::move(full)});
    }
  f.algebra = CarnotAlgebra::create(layers, entries);
  return f;
}

}  // namespace

WordPoly FreeNilpotent::to_words(const LieVec& v) const {
  if (v.algebra() != algebra) throw AlgebraMismatch("element is not in this free algebra");
  WordPoly r;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (sgn(v[i]) == 0) continue;
    for (const auto& [w, c] : expansions[i]) {
      auto [it, ins] = r.try_emplace(w, 0);
      it->second += v[i] * c;
      if (sgn(it->second) == 0) r.erase(it);
    }
  }
  return r;
}

LieVec FreeNilpotent::from_words(const WordPoly& p) const {
  LieVec out(algebra);
  std::map<std::size_t, WordPoly> parts;
  for (const auto& [w, c] : p) parts[w.size()].emplace(w, c);
  for (const auto& [k, part] : parts) {
    if (k == 0 || static_cast<int>(k) > step)
      throw std::invalid_argument("word polynomial has a component of degree " + std::to_string(k));
    std::vector<std::size_t> basis;
    for (std::size_t i = 0; i < expansions.size(); ++i)
      if (degree_of(expansions[i]) == k) basis.push_back(i);
    WordIndex idx;
    const std::size_t len = word_count(rank, static_cast<int>(k));
    std::vector<QVector> gens;
    for (auto b : basis) gens.push_back(coords(expansions[b], idx, len));
    auto c = express(gens, coords(part, idx, len));
    if (!c) throw std::invalid_argument("word polynomial is not a Lie element");
    for (std::size_t t = 0; t < basis.size(); ++t) out[basis[t]] += (*c)[t];
  }
  return out;
}

const FreeNilpotent& free_nilpotent(int rank, int step) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<FreeNilpotent>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{rank, step}];
  if (!slot) slot = std::make_unique<FreeNilpotent>(build(rank, step));
  return *slot;
}

AlgebraPtr f23_algebra() { return free_nilpotent(2, 3).algebra; }
AlgebraPtr f24_algebra() { return free_nilpotent(2, 4).algebra; }

}  // namespace carnot
