#pragma once

#include <optional>
#include <vector>

#include "carnot/rational.hpp"

namespace carnot {

using QVector = std::vector<Rational>;

bool is_zero_vector(const QVector& v);

// A subspace of Q^n kept as a reduced row echelon basis.
class Subspace {
 public:
  explicit Subspace(std::size_t ambient_dim = 0) : n_(ambient_dim) {}

  std::size_t ambient_dim() const { return n_; }
  std::size_t dim() const { return rows_.size(); }
  const std::vector<QVector>& basis() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  // Adds v to the span; returns true when the dimension grew.
  bool insert(const QVector& v);
  // v minus its component along the pivot columns; zero iff v is in the span.
  QVector reduce(const QVector& v) const;
  bool contains(const QVector& v) const { return is_zero_vector(reduce(v)); }
  bool contains(const Subspace& other) const;

  friend bool operator==(const Subspace& a, const Subspace& b);

 private:
  std::size_t n_;
  std::vector<QVector> rows_;
  std::vector<std::size_t> pivots_;
};

std::size_t rank(const std::vector<QVector>& rows);

// Coefficients c with sum c_i generators_i = target, if any.
std::optional<QVector> express(const std::vector<QVector>& generators, const QVector& target);

}  // namespace carnot
