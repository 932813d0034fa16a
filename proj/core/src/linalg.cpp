#include "carnot/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace carnot {

bool is_zero_vector(const QVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return sgn(q) == 0; });
}

QVector Subspace::reduce(const QVector& v) const {
  if (v.size() != n_) throw std::invalid_argument("vector length does not match subspace");
  QVector r = v;
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const Rational f = r[pivots_[k]];
    if (sgn(f) == 0) continue;
    for (std::size_t j = 0; j < n_; ++j)
      if (sgn(rows_[k][j]) != 0) r[j] -= f * rows_[k][j];
  }
  return r;
}

bool Subspace::insert(const QVector& v) {
  QVector r = reduce(v);
  auto it = std::find_if(r.begin(), r.end(), [](const Rational& q) { return sgn(q) != 0; });
  if (it == r.end()) return false;
  const std::size_t p = static_cast<std::size_t>(it - r.begin());
  const Rational inv = 1 / r[p];
  for (auto& x : r) x *= inv;
  for (auto& row : rows_) {
    const Rational f = row[p];
    if (sgn(f) == 0) continue;
    for (std::size_t j = 0; j < n_; ++j) row[j] -= f * r[j];
  }
  // Keep rows ordered by pivot so the basis is canonical.
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p);
  const auto idx = pos - pivots_.begin();
  pivots_.insert(pos, p);
  rows_.insert(rows_.begin() + idx, std::move(r));
  return true;
}

bool Subspace::contains(const Subspace& other) const {
  return std::all_of(other.rows_.begin(), other.rows_.end(),
                     [this](const QVector& v) { return contains(v); });
}

bool operator==(const Subspace& a, const Subspace& b) {
  return a.n_ == b.n_ && a.pivots_ == b.pivots_ && a.rows_ == b.rows_;
}

std::size_t rank(const std::vector<QVector>& rows) {
  if (rows.empty()) return 0;
  Subspace s(rows.front().size());
  for (const auto& r : rows) s.insert(r);
  return s.dim();
}

std::optional<QVector> express(const std::vector<QVector>& generators, const QVector& target) {
  const std::size_t m = generators.size();
  const std::size_t n = target.size();
  // Augmented system: columns are generators, unknowns are their weights.
  std::vector<QVector> a(n, QVector(m + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (generators[j].size() != n) throw std::invalid_argument("generator length mismatch");
      a[i][j] = generators[j][i];
    }
    a[i][m] = target[i];
  }
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m && row < n; ++col) {
    std::size_t sel = row;
    while (sel < n && sgn(a[sel][col]) == 0) ++sel;
    if (sel == n) continue;
    std::swap(a[sel], a[row]);
    const Rational inv = 1 / a[row][col];
    for (auto& x : a[row]) x *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == row || sgn(a[i][col]) == 0) continue;
      const Rational f = a[i][col];
      for (std::size_t j = col; j <= m; ++j) a[i][j] -= f * a[row][j];
    }
    pivot_col.push_back(col);
    ++row;
  }
  for (std::size_t i = row; i < n; ++i)
    if (sgn(a[i][m]) != 0) return std::nullopt;
  QVector c(m);
  for (std::size_t k = 0; k < pivot_col.size(); ++k) c[pivot_col[k]] = a[k][m];
  return c;
}

}  // namespace carnot
