#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "carnot/rational.hpp"

namespace carnot {

using Exponents = std::vector<std::uint32_t>;

// Graded lexicographic: total degree first, then lexicographic on the
// exponent vector (first variable most significant).
struct GrlexLess {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

class UnknownVariable : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ZeroDenominator : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Sparse polynomial with exact rational coefficients. Binary operations
// extend both operands to the union of their variable lists (left operand's
// variables first).
class MPoly {
 public:
  using TermMap = std::map<Exponents, Rational, GrlexLess>;

  MPoly() = default;
  MPoly(const Rational& c);  // NOLINT: constants convert implicitly
  MPoly(int c);              // NOLINT

  static MPoly variable(const std::string& name);
  static MPoly constant(const Rational& c, std::vector<std::string> vars = {});
  static MPoly from_terms(std::vector<std::string> vars, const TermMap& terms);

  const std::vector<std::string>& variables() const { return vars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t num_terms() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  unsigned total_degree() const;
  unsigned degree_in(std::string_view var) const;
  // Index of `var` or -1.
  int index_of(std::string_view var) const;

  Rational coefficient(const Exponents& e) const;
  // Coefficient of the monomial given by name -> exponent (other variables 0).
  Rational coefficient(const std::map<std::string, unsigned>& mono) const;

  // Re-express over `vars`, which must contain every variable that occurs
  // with a positive exponent.
  MPoly with_variables(const std::vector<std::string>& vars) const;

  MPoly operator-() const;
  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  MPoly& operator*=(const MPoly& o);
  MPoly& operator*=(const Rational& c);

  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  friend MPoly operator*(MPoly a, const Rational& c) { return a *= c; }
  friend MPoly operator*(const Rational& c, MPoly a) { return a *= c; }
  friend MPoly operator*(MPoly a, int c) { return a *= Rational(c); }
  friend MPoly operator*(int c, MPoly a) { return a *= Rational(c); }
  friend bool operator==(const MPoly& a, const MPoly& b);

  MPoly pow(unsigned k) const;

  // Canonical text: descending grlex, "num/den*x1^2*x3" terms joined by " + ".
  std::string to_string() const;

 private:
  MPoly(std::vector<std::string> vars, TermMap terms);
  void add_scaled(const MPoly& o, int sign);

  std::vector<std::string> vars_;
  TermMap terms_;
};

std::vector<std::string> union_variables(const std::vector<std::string>& a,
                                         const std::vector<std::string>& b);

MPoly diff(const MPoly& p, std::string_view var);
Rational eval(const MPoly& p, std::span<const Rational> point);
double eval(const MPoly& p, std::span<const double> point);
// Evaluation by name; unused names are ignored, missing ones throw.
Rational eval(const MPoly& p, const std::map<std::string, Rational, std::less<>>& point);
// Coefficient of var^k, as a polynomial in the remaining variables.
MPoly coefficient_of(const MPoly& p, std::string_view var, unsigned k);

using PolyMatrix3 = std::array<std::array<MPoly, 3>, 3>;
MPoly det3(const PolyMatrix3& m);
std::vector<std::vector<MPoly>> jacobian(std::span<const MPoly> f,
                                         std::span<const std::string> vars);

// num/den, never reduced; equality is by cross-multiplication.
class RatFunc {
 public:
  RatFunc() : num_(), den_(1) {}
  explicit RatFunc(MPoly num);
  RatFunc(MPoly num, MPoly den);

  const MPoly& num() const { return num_; }
  const MPoly& den() const { return den_; }

  RatFunc operator-() const { return RatFunc(-num_, den_); }
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  friend bool operator==(const RatFunc& a, const RatFunc& b);

  bool is_zero() const { return num_.is_zero(); }
  // Throws ZeroDenominator if the denominator vanishes at the point.
  Rational eval(const std::map<std::string, Rational, std::less<>>& point) const;
  std::string to_string() const;

 private:
  MPoly num_;
  MPoly den_;
};

using Assignment = std::map<std::string, RatFunc, std::less<>>;

RatFunc subst(const MPoly& p, const Assignment& assignment);
RatFunc subst(const RatFunc& r, const Assignment& assignment);

}  // namespace carnot
