#include "carnot/mpoly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace carnot {

bool GrlexLess::operator()(const Exponents& a, const Exponents& b) const {
  const auto da = std::accumulate(a.begin(), a.end(), 0u);
  const auto db = std::accumulate(b.begin(), b.end(), 0u);
  if (da != db) return da < db;
  return a < b;
}

MPoly::MPoly(std::vector<std::string> vars, TermMap terms)
    : vars_(std::move(vars)), terms_(std::move(terms)) {}

MPoly::MPoly(const Rational& c) {
  if (sgn(c) != 0) terms_.emplace(Exponents{}, c);
}

MPoly::MPoly(int c) : MPoly(Rational(c)) {}

MPoly MPoly::variable(const std::string& name) {
  if (name.empty()) throw std::invalid_argument("empty variable name");
  TermMap t;
  t.emplace(Exponents{1}, Rational(1));
  return MPoly({name}, std::move(t));
}

MPoly MPoly::constant(const Rational& c, std::vector<std::string> vars) {
  TermMap t;
  if (sgn(c) != 0) t.emplace(Exponents(vars.size(), 0), c);
  return MPoly(std::move(vars), std::move(t));
}

MPoly MPoly::from_terms(std::vector<std::string> vars, const TermMap& terms) {
  TermMap t;
  for (const auto& [e, c] : terms) {
    if (e.size() != vars.size()) throw std::invalid_argument("exponent vector length mismatch");
    if (sgn(c) != 0) t[e] += c;
  }
  std::erase_if(t, [](const auto& kv) { return sgn(kv.second) == 0; });
  return MPoly(std::move(vars), std::move(t));
}

bool MPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && total_degree() == 0);
}

Rational MPoly::constant_term() const {
  return coefficient(Exponents(vars_.size(), 0));
}

unsigned MPoly::total_degree() const {
  if (terms_.empty()) return 0;
  const auto& e = terms_.rbegin()->first;
  return std::accumulate(e.begin(), e.end(), 0u);
}

int MPoly::index_of(std::string_view var) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == var) return static_cast<int>(i);
  return -1;
}

unsigned MPoly::degree_in(std::string_view var) const {
  const int k = index_of(var);
  if (k < 0) return 0;
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[k]);
  return d;
}

Rational MPoly::coefficient(const Exponents& e) const {
  if (e.size() != vars_.size()) throw std::invalid_argument("exponent vector length mismatch");
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational MPoly::coefficient(const std::map<std::string, unsigned>& mono) const {
  Exponents e(vars_.size(), 0);
  for (const auto& [name, k] : mono) {
    const int i = index_of(name);
    if (i < 0) {
      if (k == 0) continue;
      return Rational(0);
    }
    e[i] = k;
  }
  return coefficient(e);
}

MPoly MPoly::with_variables(const std::vector<std::string>& vars) const {
  if (vars == vars_) return *this;
  std::vector<int> where(vars_.size(), -1);
  for (std::size_t i = 0; i < vars_.size(); ++i)
    for (std::size_t j = 0; j < vars.size(); ++j)
      if (vars[j] == vars_[i]) where[i] = static_cast<int>(j);
  TermMap t;
  for (const auto& [e, c] : terms_) {
    Exponents ne(vars.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (where[i] < 0) throw UnknownVariable("variable '" + vars_[i] + "' dropped by re-alignment");
      ne[where[i]] = e[i];
    }
    t.emplace(std::move(ne), c);
  }
  return MPoly(vars, std::move(t));
}

std::vector<std::string> union_variables(const std::vector<std::string>& a,
                                         const std::vector<std::string>& b) {
  std::vector<std::string> u = a;
  for (const auto& v : b)
    if (std::find(u.begin(), u.end(), v) == u.end()) u.push_back(v);
  return u;
}

MPoly MPoly::operator-() const {
  MPoly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

void MPoly::add_scaled(const MPoly& o, int sign) {
  if (o.terms_.empty()) return;
  const MPoly* rhs = &o;
  MPoly aligned;
  if (o.vars_ != vars_) {
    auto u = union_variables(vars_, o.vars_);
    if (u != vars_) *this = with_variables(u);
    aligned = o.with_variables(u);
    rhs = &aligned;
  }
  for (const auto& [e, c] : rhs->terms_) {
    auto [it, inserted] = terms_.try_emplace(e, 0);
    if (sign > 0)
      it->second += c;
    else
      it->second -= c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

MPoly& MPoly::operator+=(const MPoly& o) {
  add_scaled(o, +1);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
  add_scaled(o, -1);
  return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  if (a.terms_.empty() || b.terms_.empty()) {
    return MPoly(union_variables(a.vars_, b.vars_), {});
  }
  auto u = union_variables(a.vars_, b.vars_);
  const MPoly& x = a.vars_ == u ? a : a.with_variables(u);
  MPoly ybuf;
  const MPoly* y = &b;
  if (b.vars_ != u) {
    ybuf = b.with_variables(u);
    y = &ybuf;
  }
  MPoly::TermMap t;
  Exponents e(u.size());
  Rational prod;
  for (const auto& [ea, ca] : x.terms_) {
    for (const auto& [eb, cb] : y->terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      prod = ca * cb;
      auto [it, inserted] = t.try_emplace(e, prod);
      if (!inserted) {
        it->second += prod;
        if (sgn(it->second) == 0) t.erase(it);
      }
    }
  }
  return MPoly(std::move(u), std::move(t));
}

MPoly& MPoly::operator*=(const MPoly& o) {
  *this = *this * o;
  return *this;
}

MPoly& MPoly::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

bool operator==(const MPoly& a, const MPoly& b) {
  if (a.vars_ == b.vars_) return a.terms_ == b.terms_;
  return (a - b).is_zero();
}

MPoly MPoly::pow(unsigned k) const {
  MPoly r = MPoly::constant(1, vars_);
  MPoly base = *this;
  while (k) {
    if (k & 1u) r *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return r;
}

std::string MPoly::to_string() const {
  if (terms_.empty()) return "0/1";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    os << to_fraction_string(it->second);
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (it->first[i] == 0) continue;
      os << '*' << vars_[i];
      if (it->first[i] > 1) os << '^' << it->first[i];
    }
  }
  return os.str();
}

MPoly diff(const MPoly& p, std::string_view var) {
  const int k = p.index_of(var);
  if (k < 0) throw UnknownVariable("unknown variable '" + std::string(var) + "'");
  MPoly::TermMap t;
  for (const auto& [e, c] : p.terms()) {
    if (e[k] == 0) continue;
    Exponents ne = e;
    --ne[k];
    t.emplace(std::move(ne), c * e[k]);
  }
  return MPoly::from_terms(p.variables(), t);
}

namespace {

template <class T>
T eval_impl(const MPoly& p, std::span<const T> point) {
  if (point.size() != p.variables().size())
    throw std::invalid_argument("evaluation point has " + std::to_string(point.size()) +
                                " entries, polynomial has " +
                                std::to_string(p.variables().size()) + " variables");
  T sum = 0;
  for (const auto& [e, c] : p.terms()) {
    T term;
    if constexpr (std::is_same_v<T, double>)
      term = to_double(c);
    else
      term = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (unsigned j = 0; j < e[i]; ++j) term *= point[i];
    sum += term;
  }
  return sum;
}

}  // namespace

Rational eval(const MPoly& p, std::span<const Rational> point) { return eval_impl(p, point); }
double eval(const MPoly& p, std::span<const double> point) { return eval_impl(p, point); }

Rational eval(const MPoly& p, const std::map<std::string, Rational, std::less<>>& point) {
  std::vector<Rational> v(p.variables().size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    auto it = point.find(p.variables()[i]);
    if (it != point.end()) {
      v[i] = it->second;
    } else if (p.degree_in(p.variables()[i]) > 0) {
      throw UnknownVariable("no value for variable '" + p.variables()[i] + "'");
    }
  }
  return eval(p, std::span<const Rational>(v));
}

MPoly coefficient_of(const MPoly& p, std::string_view var, unsigned k) {
  const int idx = p.index_of(var);
  if (idx < 0) return k == 0 ? p : MPoly::constant(0, p.variables());
  MPoly::TermMap t;
  for (const auto& [e, c] : p.terms()) {
    if (e[idx] != k) continue;
    Exponents ne = e;
    ne[idx] = 0;
    t.emplace(std::move(ne), c);
  }
  return MPoly::from_terms(p.variables(), t);
}

MPoly det3(const PolyMatrix3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

std::vector<std::vector<MPoly>> jacobian(std::span<const MPoly> f,
                                         std::span<const std::string> vars) {
  std::vector<std::vector<MPoly>> j(f.size());
  for (std::size_t r = 0; r < f.size(); ++r) {
    for (const auto& v : vars) {
      // Variables a component does not mention have zero partials.
      j[r].push_back(f[r].index_of(v) < 0 ? MPoly::constant(0, f[r].variables()) : diff(f[r], v));
    }
  }
  return j;
}

RatFunc::RatFunc(MPoly num) : num_(std::move(num)), den_(1) {}

RatFunc::RatFunc(MPoly num, MPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw ZeroDenominator("rational function with zero denominator");
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.num_.is_zero()) throw ZeroDenominator("division by the zero rational function");
  return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

bool operator==(const RatFunc& a, const RatFunc& b) {
  return a.num_ * b.den_ == b.num_ * a.den_;
}

Rational RatFunc::eval(const std::map<std::string, Rational, std::less<>>& point) const {
  Rational d = carnot::eval(den_, point);
  if (sgn(d) == 0) throw ZeroDenominator("denominator vanishes at evaluation point");
  return Rational(carnot::eval(num_, point) / d);
}

std::string RatFunc::to_string() const {
  return "(" + num_.to_string() + ") / (" + den_.to_string() + ")";
}

RatFunc subst(const MPoly& p, const Assignment& assignment) {
  const auto& vars = p.variables();
  std::vector<unsigned> maxdeg(vars.size(), 0);
  for (const auto& [e, c] : p.terms())
    for (std::size_t i = 0; i < e.size(); ++i) maxdeg[i] = std::max(maxdeg[i], e[i]);

  std::vector<const RatFunc*> value(vars.size(), nullptr);
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (maxdeg[i] == 0) continue;
    auto it = assignment.find(vars[i]);
    if (it == assignment.end()) throw UnknownVariable("missing assignment for '" + vars[i] + "'");
    value[i] = &it->second;
  }

  // Common denominator D = prod den_i^maxdeg_i; each monomial contributes
  // c * prod num_i^e_i * den_i^(maxdeg_i - e_i).
  std::vector<std::vector<MPoly>> num_pow(vars.size()), den_pow(vars.size());
  MPoly common(1);
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (!value[i]) continue;
    num_pow[i].push_back(MPoly(1));
    den_pow[i].push_back(MPoly(1));
    for (unsigned k = 1; k <= maxdeg[i]; ++k) {
      num_pow[i].push_back(num_pow[i].back() * value[i]->num());
      den_pow[i].push_back(den_pow[i].back() * value[i]->den());
    }
    common *= den_pow[i][maxdeg[i]];
  }

  MPoly total;
  for (const auto& [e, c] : p.terms()) {
    MPoly term(c);
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (!value[i]) continue;
      term *= num_pow[i][e[i]];
      if (e[i] < maxdeg[i]) term *= den_pow[i][maxdeg[i] - e[i]];
    }
    total += term;
  }
  if (common.is_zero()) throw ZeroDenominator("substitution produced a zero denominator");
  return RatFunc(std::move(total), std::move(common));
}

RatFunc subst(const RatFunc& r, const Assignment& assignment) {
  RatFunc n = subst(r.num(), assignment);
  RatFunc d = subst(r.den(), assignment);
  if (d.num().is_zero()) throw ZeroDenominator("substitution makes the denominator vanish");
  return n / d;
}

}  // namespace carnot
