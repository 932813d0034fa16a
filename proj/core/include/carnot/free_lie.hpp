#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "carnot/lie.hpp"

namespace carnot {

using Word = std::vector<std::uint8_t>;
using WordPoly = std::map<Word, Rational>;

WordPoly word_commutator(const WordPoly& p, const WordPoly& q);

// Free nilpotent Lie algebra of given rank and step, realised inside the free
// associative algebra. Basis: generators, then [X_j, X_i] (j > i), then for
// each layer k >= 3 the brackets [b, X_g] over the previous layer in order,
// keeping those linearly independent of the ones already chosen.
struct FreeNilpotent {
  int rank = 0;
  int step = 0;
  AlgebraPtr algebra;
  std::vector<WordPoly> expansions;                // basis element as a Lie polynomial in words
  std::vector<std::pair<int, int>> recipe;         // (left, right) basis indices; (-1,-1) for generators

  WordPoly to_words(const LieVec& v) const;
  // Throws std::invalid_argument if p is not a Lie element of degree <= step.
  LieVec from_words(const WordPoly& p) const;
};

const FreeNilpotent& free_nilpotent(int rank, int step);

}  // namespace carnot
