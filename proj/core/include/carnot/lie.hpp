#pragma once

#include <iosfwd>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "carnot/linalg.hpp"
#include "carnot/scalar.hpp"

namespace carnot {

class AlgebraMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidAlgebra : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Stratified nilpotent Lie algebra given by structure constants on a graded
// basis X1..Xn. Construction checks antisymmetry, grading, the Jacobi
// identity and that V1 generates each layer.
class CarnotAlgebra {
 public:
  using SparseVec = std::vector<std::pair<std::size_t, Rational>>;

  // One entry [X_i, X_j] = sum_k coeffs[k] X_k, 0-based indices. Entries for
  // (j, i) are implied; if both are given they must agree.
  struct Entry {
    std::size_t i, j;
    QVector coeffs;
  };

  static std::shared_ptr<const CarnotAlgebra> create(std::vector<int> layers,
                                                     const std::vector<Entry>& brackets,
                                                     std::vector<std::string> names = {});

  std::size_t dim() const { return layers_.size(); }
  int step() const { return step_; }
  int layer_of(std::size_t i) const { return layers_.at(i); }
  const std::vector<int>& layers() const { return layers_; }
  std::vector<std::size_t> layer_indices(int k) const;
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  const SparseVec& bracket_of(std::size_t i, std::size_t j) const { return table_[i * dim() + j]; }

  // Plain-text table: "dim n", "layers l1 .. ln", optional "names ..", then
  // one line "i j c1 .. cn" (1-based indices) per nonzero bracket with i > j.
  std::string to_table() const;
  static std::shared_ptr<const CarnotAlgebra> from_table(std::istream& in);
  static std::shared_ptr<const CarnotAlgebra> from_table_file(const std::string& path);

  friend bool operator==(const CarnotAlgebra& a, const CarnotAlgebra& b);

 private:
  CarnotAlgebra() = default;
  void validate() const;

  std::vector<int> layers_;
  int step_ = 0;
  std::vector<std::string> names_;
  std::vector<SparseVec> table_;
};

using AlgebraPtr = std::shared_ptr<const CarnotAlgebra>;

template <class T>
class BasicLieVec {
 public:
  BasicLieVec() = default;
  explicit BasicLieVec(AlgebraPtr alg) : alg_(std::move(alg)), c_(alg_->dim(), T(0)) {}
  BasicLieVec(AlgebraPtr alg, std::vector<T> coeffs) : alg_(std::move(alg)), c_(std::move(coeffs)) {
    if (c_.size() != alg_->dim())
      throw std::invalid_argument("coefficient vector length does not match algebra dimension");
  }
  static BasicLieVec basis(AlgebraPtr alg, std::size_t i) {
    BasicLieVec v(std::move(alg));
    v.c_.at(i) = T(1);
    return v;
  }

  const AlgebraPtr& algebra() const { return alg_; }
  std::size_t size() const { return c_.size(); }
  const T& operator[](std::size_t i) const { return c_[i]; }
  T& operator[](std::size_t i) { return c_[i]; }
  const std::vector<T>& coeffs() const { return c_; }

  bool is_zero() const {
    for (const auto& x : c_)
      if (!carnot::is_zero(x)) return false;
    return true;
  }

  BasicLieVec operator-() const {
    BasicLieVec r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  BasicLieVec& operator+=(const BasicLieVec& o) {
    check_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  BasicLieVec& operator-=(const BasicLieVec& o) {
    check_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  BasicLieVec& operator*=(const T& s) {
    for (auto& x : c_) x *= s;
    return *this;
  }
  friend BasicLieVec operator+(BasicLieVec a, const BasicLieVec& b) { return a += b; }
  friend BasicLieVec operator-(BasicLieVec a, const BasicLieVec& b) { return a -= b; }
  friend BasicLieVec operator*(const T& s, BasicLieVec a) { return a *= s; }
  friend BasicLieVec operator*(BasicLieVec a, const T& s) { return a *= s; }
  friend bool operator==(const BasicLieVec& a, const BasicLieVec& b) {
    a.check_same(b);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      if (!(a.c_[i] == b.c_[i])) return false;
    return true;
  }

  void check_same(const BasicLieVec& o) const {
    if (alg_ != o.alg_) throw AlgebraMismatch("Lie algebra elements belong to different algebras");
  }

 private:
  AlgebraPtr alg_;
  std::vector<T> c_;
};

using LieVec = BasicLieVec<Rational>;

QVector to_qvector(const LieVec& v);
LieVec from_qvector(const AlgebraPtr& alg, const QVector& v);
std::string to_string(const LieVec& v);  // e.g. "X1 - 1/2*X3"

template <class T>
BasicLieVec<T> bracket(const BasicLieVec<T>& u, const BasicLieVec<T>& v) {
  u.check_same(v);
  const auto& alg = *u.algebra();
  BasicLieVec<T> r(u.algebra());
  for (std::size_t i = 0; i < alg.dim(); ++i) {
    if (is_zero(u[i])) continue;
    for (std::size_t j = 0; j < alg.dim(); ++j) {
      if (is_zero(v[j])) continue;
      const auto& col = alg.bracket_of(i, j);
      if (col.empty()) continue;
      T uv = u[i] * v[j];
      for (const auto& [k, c] : col) r[k] += uv * ScalarTraits<T>::from(c);
    }
  }
  return r;
}

// Polynomial in t with Lie-algebra coefficients; coeffs[k] multiplies t^k.
template <class T>
struct BasicTPoly {
  std::vector<BasicLieVec<T>> coeffs;

  // Highest k with a nonzero coefficient, or -1 for the zero polynomial.
  int degree() const {
    for (int k = static_cast<int>(coeffs.size()) - 1; k >= 0; --k)
      if (!coeffs[k].is_zero()) return k;
    return -1;
  }
  BasicLieVec<T> eval(const T& t) const {
    BasicLieVec<T> r(coeffs.front().algebra());
    T tk = T(1);
    for (const auto& c : coeffs) {
      r += tk * c;
      tk *= t;
    }
    return r;
  }
};

using TPoly = BasicTPoly<Rational>;

// e^{t ad_Y} X = sum_k t^k ad_Y^k X / k!.
template <class T>
BasicTPoly<T> exp_ad(const BasicLieVec<T>& y, const BasicLieVec<T>& x) {
  y.check_same(x);
  BasicTPoly<T> p;
  p.coeffs.push_back(x);
  BasicLieVec<T> cur = x;
  for (long k = 1;; ++k) {
    cur = bracket(y, cur);
    if (cur.is_zero()) break;
    cur *= ratio<T>(1, k);  // cur now holds ad_Y^k X / k!
    p.coeffs.push_back(cur);
  }
  return p;
}

// log(exp u exp v), exact through step 4.
template <class T>
BasicLieVec<T> bch(const BasicLieVec<T>& u, const BasicLieVec<T>& v) {
  u.check_same(v);
  if (u.algebra()->step() > 4)
    throw std::invalid_argument("BCH is implemented for step at most 4");
  const auto uv = bracket(u, v);
  const auto u_uv = bracket(u, uv);
  BasicLieVec<T> r = u + v;
  r += ratio<T>(1, 2) * uv;
  r += ratio<T>(1, 12) * u_uv;
  r -= ratio<T>(1, 12) * bracket(v, uv);
  r -= ratio<T>(1, 24) * bracket(v, u_uv);
  return r;
}

template <class T>
BasicLieVec<T> dilate_alg(const T& lambda, BasicLieVec<T> u) {
  const auto& alg = *u.algebra();
  std::vector<T> pw{T(1)};
  for (int k = 1; k <= alg.step(); ++k) pw.push_back(pw.back() * lambda);
  for (std::size_t i = 0; i < u.size(); ++i) u[i] *= pw[alg.layer_of(i)];
  return u;
}

// Canonical representative of v modulo the span s (pivot coordinates zeroed).
LieVec reduce_mod(const Subspace& s, const LieVec& v);

// The rank-2 step-3 algebra with X3=[X2,X1], X4=[X3,X1], X5=[X3,X2].
AlgebraPtr f23_algebra();
// Rank-2 step-4 completion: adds X6=[X4,X1], X7=[X4,X2], X8=[X5,X2].
AlgebraPtr f24_algebra();

}  // namespace carnot
