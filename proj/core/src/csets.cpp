#include "carnot/csets.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "carnot/random.hpp"
#include "carnot/semigroup.hpp"

namespace carnot {

namespace {

LieVec x2_normal() { return LieVec::basis(f23_algebra(), 1); }

template <class T>
bool e1_member(const Pt2<T>& x) {
  return x[1] >= 0 && x[3] >= 0 && x[4] * x[4] <= 2 * x[1] * x[1] * x[1] * x[3];
}

template <class T>
bool e2_member(const Pt2<T>& x) {
  return x[1] >= 0 && x[3] >= 0;
}

}  // namespace

SetOracle halfspace_oracle() {
  return {"halfspace", [](const Pt2<Rational>& x) { return sgn(x[1]) >= 0; },
          [](const Pt2<double>& x) { return x[1] >= 0; }, x2_normal(), true, "{x2 >= 0}"};
}

SetOracle halfspace_complement_oracle() {
  return {"halfspace-complement", [](const Pt2<Rational>& x) { return sgn(x[1]) < 0; },
          [](const Pt2<double>& x) { return x[1] < 0; }, x2_normal(), true,
          "{x2 < 0} paired with normal X2 (monotone the wrong way)"};
}

SetOracle e1_oracle() {
  return {"E1", [](const Pt2<Rational>& x) { return e1_member(x); },
          [](const Pt2<double>& x) { return e1_member(x); }, x2_normal(), true,
          "{x2 >= 0, x4 >= 0, x5^2 <= 2 x2^3 x4}"};
}

SetOracle e2_oracle() {
  return {"E2", [](const Pt2<Rational>& x) { return e2_member(x); },
          [](const Pt2<double>& x) { return e2_member(x); }, x2_normal(), true, "{x2 >= 0, x4 >= 0}"};
}

SetOracle semigroup_interior_oracle() {
  return {"S",
          [](const Pt2<Rational>& x) { return sgn(x[1]) > 0 && sgn(paraboloid_poly(x)) > 0; },
          [](const Pt2<double>& x) { return x[1] > 0 && paraboloid_poly(x) > 0; },
          x2_normal(),
          true,
          "{P > 0, x2 > 0}, interior of the semigroup generated by {b >= 0}"};
}

SetOracle cone_ab(const Rational& alpha, const Rational& beta) {
  if (sgn(alpha) < 0 || sgn(beta) < 0) throw std::invalid_argument("cone parameters must be nonnegative");
  if (sgn(alpha) == 0 && sgn(beta) == 0) throw std::invalid_argument("cone parameters cannot both be zero");
  const double ad = to_double(alpha), bd = to_double(beta);
  SetOracle o;
  o.name = "coneAB:" + to_string(alpha) + ":" + to_string(beta);
  // Closure of the interior: x4 >= 0 only bites on x2 = 0, where the
  // inequality alone lets in a non-monotone null slice.
  o.contains_exact = [alpha, beta](const Pt2<Rational>& x) {
    if (sgn(x[1]) < 0 || sgn(x[3]) < 0) return false;
    const Rational l = alpha * x[2] + beta * x[4];
    const Rational m = alpha + beta * x[1];
    return l * l <= 2 * x[1] * x[3] * m * m;
  };
  o.contains = [ad, bd](const Pt2<double>& x) {
    if (x[1] < 0 || x[3] < 0) return false;
    const double l = ad * x[2] + bd * x[4];
    const double m = ad + bd * x[1];
    return l * l <= 2 * x[1] * x[3] * m * m;
  };
  o.claimed_normal = x2_normal();
  o.is_cone = true;
  o.notes = "{x2 >= 0, x4 >= 0, (alpha x3 + beta x5)^2 <= 2 x2 x4 (alpha + beta x2)^2}";
  return o;
}

SetOracle resolve_oracle(const std::string& name) {
  if (name == "halfspace") return halfspace_oracle();
  if (name == "halfspace-complement") return halfspace_complement_oracle();
  if (name == "E1") return e1_oracle();
  if (name == "E2") return e2_oracle();
  if (name == "S") return semigroup_interior_oracle();
  if (name.rfind("coneAB:", 0) == 0) {
    const auto rest = name.substr(7);
    const auto colon = rest.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("expected coneAB:<alpha>:<beta>");
    return cone_ab(parse_rational(rest.substr(0, colon)), parse_rational(rest.substr(colon + 1)));
  }
  if (name.rfind("pathE:", 0) == 0) {
    const auto d = parse_rational(name.substr(6));
    if (d.get_den() != 1 || sgn(d) < 0 || d > 24) throw std::invalid_argument("pathE depth must be an integer in [0, 24]");
    return pathological_E(default_cantor_spec(d.get_num().get_ui()));
  }
  throw std::invalid_argument("unknown set '" + name + "'");
}

// ---------------------------------------------------------------------------

bool CertificateReport::ok() const {
  return !steps.empty() && std::all_of(steps.begin(), steps.end(), [](const auto& s) { return s.passed; });
}

namespace {

const std::vector<std::string>& xvars() {
  static const std::vector<std::string> v{"x1", "x2", "x3", "x4", "x5"};
  return v;
}

Pt2<MPoly> symbolic_point() {
  Pt2<MPoly> x;
  for (std::size_t i = 0; i < 5; ++i) x[i] = MPoly::variable(xvars()[i]);
  return x;
}

CertificateStep compare(std::string name, const MPoly& lhs, const MPoly& rhs) {
  return {std::move(name), lhs == rhs, lhs.to_string(), rhs.to_string()};
}

bool nonnegative_coefficients(const MPoly& p) {
  return std::all_of(p.terms().begin(), p.terms().end(), [](const auto& kv) { return sgn(kv.second) >= 0; });
}

}  // namespace

MPoly x2_derivative(const MPoly& p) {
  const MPoly q = p.with_variables(union_variables(p.variables(), xvars()));
  const auto field = lvf(2, symbolic_point());
  MPoly r;
  for (std::size_t k = 0; k < 5; ++k)
    if (!field[k].is_zero()) r += field[k] * diff(q, xvars()[k]);
  return r;
}

CertificateReport cone_ab_certificate(const MPoly& alpha, const MPoly& beta) {
  CertificateReport rep;
  const auto x = symbolic_point();
  const MPoly m = alpha + beta * x[1];
  const MPoly l = alpha * x[2] + beta * x[4];
  const MPoly defining = 2 * x[1] * x[3] * m * m - l * l;

  rep.derivative = x2_derivative(defining);
  const MPoly expected_d = 2 * x[3] * m * m + 4 * beta * x[1] * x[3] * m + 2 * alpha * x[0] * l +
                           x[0] * x[0] * x[1] * m * m - 2 * beta * x[0] * x[1] * l;
  rep.steps.push_back(compare("X2 derivative of the defining polynomial", rep.derivative, expected_d));

  const MPoly A = coefficient_of(rep.derivative, "x1", 2);
  const MPoly B = coefficient_of(rep.derivative, "x1", 1) * make_rational(1, 2);
  const MPoly C = coefficient_of(rep.derivative, "x1", 0);
  rep.steps.push_back(compare("x1-quadratic has no terms above degree 2",
                              A * x[0] * x[0] + 2 * B * x[0] + C, rep.derivative));
  rep.steps.push_back(compare("leading coefficient x2 (alpha + beta x2)^2", A, x[1] * m * m));

  rep.discriminant = B * B - A * C;
  const MPoly amb = alpha - beta * x[1];
  const MPoly ap3b = alpha + 3 * beta * x[1];
  const MPoly D = l * l * amb * amb - 2 * m * m * m * x[1] * x[3] * ap3b;
  rep.steps.push_back(compare("reduced discriminant", rep.discriminant, D));

  rep.expansion = m * ap3b - amb * amb;
  rep.steps.push_back(compare("discriminant decomposition on the defining polynomial", D,
                              -(amb * amb) * defining + 2 * x[1] * x[3] * m * m * (-rep.expansion)));
  rep.steps.push_back({"expansion has nonnegative coefficients", nonnegative_coefficients(rep.expansion),
                       rep.expansion.to_string(), ">= 0 coefficientwise"});
  if (alpha.is_zero() && beta == MPoly(1)) {
    rep.steps.push_back(compare("(0,1) reduced discriminant", rep.discriminant,
                                x[1] * x[1] * (x[4] * x[4] - 6 * x[1] * x[1] * x[1] * x[3])));
  }
  return rep;
}

CertificateReport cone_ab_certificate(const Rational& alpha, const Rational& beta) {
  if (sgn(alpha) < 0 || sgn(beta) < 0 || (sgn(alpha) == 0 && sgn(beta) == 0))
    throw std::invalid_argument("cone parameters must be nonnegative and not both zero");
  return cone_ab_certificate(MPoly(alpha), MPoly(beta));
}

// ---------------------------------------------------------------------------

RatFunc diff(const RatFunc& f, const std::string& var) {
  auto vars = union_variables(union_variables(f.num().variables(), f.den().variables()), {var});
  const MPoly n = f.num().with_variables(vars), d = f.den().with_variables(vars);
  return RatFunc(diff(n, var) * d - n * diff(d, var), d * d);
}

namespace {

PdiSymbolicReport certify(RatFunc residual) {
  PdiSymbolicReport r{std::move(residual), false, ""};
  const MPoly prod = r.residual.num() * r.residual.den();
  bool ok = true;
  for (const auto& [e, c] : prod.terms()) {
    if (sgn(c) > 0) ok = false;
    for (auto k : e)
      if (k % 2) ok = false;
  }
  r.certified_nonpositive = ok;
  r.detail = ok ? "residual * den^2 = " + prod.to_string() + " (nonpositive combination of even monomials)"
                : "no sign certificate; residual = " + r.residual.to_string();
  return r;
}

}  // namespace

PdiSymbolicReport pdi_check_F(const RatFunc& F) {
  const RatFunc f5 = diff(F, "x5");
  return certify(f5 * f5 + RatFunc(MPoly(6)) * diff(F, "x4"));
}

PdiSymbolicReport pdi_check_graph(const RatFunc& G) {
  const RatFunc s = diff(G, "x3") - G * diff(G, "x5");
  return certify(s * s + RatFunc(MPoly(2)) * diff(G, "x4"));
}

namespace {

template <class Eval>
PdiSampledReport sample_pdi(const SampleBox& box, std::size_t n, std::uint64_t seed, Eval&& eval) {
  PdiSampledReport r;
  std::mt19937_64 rng(seed);
  std::array<std::uniform_real_distribution<double>, 3> d{
      std::uniform_real_distribution<double>(box.lo[0], box.hi[0]),
      std::uniform_real_distribution<double>(box.lo[1], box.hi[1]),
      std::uniform_real_distribution<double>(box.lo[2], box.hi[2])};
  for (std::size_t i = 0; i < n; ++i) {
    std::array<double, 3> p{d[0](rng), d[1](rng), d[2](rng)};
    const double v = eval(p);
    ++r.samples;
    if (v > r.worst_residual) {
      r.worst_residual = v;
      r.worst_point = p;
    }
  }
  return r;
}

}  // namespace

PdiSampledReport pdi_check_graph(const SampledGraphField& G, const SampleBox& box, std::size_t n,
                                 std::uint64_t seed) {
  return sample_pdi(box, n, seed, [&](const std::array<double, 3>& p) {
    const double s = G.d3(p[0], p[1], p[2]) - G.value(p[0], p[1], p[2]) * G.d5(p[0], p[1], p[2]);
    return s * s + 2 * G.d4(p[0], p[1], p[2]);
  });
}

PdiSampledReport pdi_check_F(const SampledFField& F, const SampleBox& box, std::size_t n, std::uint64_t seed) {
  return sample_pdi(box, n, seed, [&](const std::array<double, 3>& p) {
    const double f5 = F.d5(p[1], p[2]);
    return f5 * f5 + 6 * F.d4(p[1], p[2]);
  });
}

SampledFField fg_family(double C, std::function<double(double)> f, std::function<double(double)> df,
                        std::function<double(double)> g, std::function<double(double)> dg) {
  SampledFField F;
  F.value = [=](double x4, double x5) { return f(C * x5 - x4) + g(x4); };
  F.d4 = [=](double x4, double x5) { return -df(C * x5 - x4) + dg(x4); };
  F.d5 = [=](double x4, double x5) { return C * df(C * x5 - x4); };
  return F;
}

// ---------------------------------------------------------------------------

CantorSpec default_cantor_spec(std::size_t depth) {
  CantorSpec s;
  s.a = [](std::size_t j) {
    const long m = static_cast<long>(j) + 4;
    return make_rational(1, m * m);
  };
  s.depth = depth;
  // sum_{m > M} 1/m^2 < 1/M with M = n + 4.
  s.tail_bound = [](std::size_t n) { return make_rational(1, static_cast<long>(n) + 4); };
  return s;
}

Rational cantor_partial_sum(const CantorSpec& spec, std::size_t n) {
  Rational s = 0;
  for (std::size_t j = 0; j <= n; ++j) s += spec.a(j);
  return s;
}

void validate(const CantorSpec& spec) {
  if (!spec.a) throw CantorSpecError("Cantor sequence is not set");
  Rational s = 0;
  for (std::size_t j = 0; j <= spec.depth; ++j) {
    const Rational aj = spec.a(j);
    if (sgn(aj) <= 0) throw CantorSpecError("a_" + std::to_string(j) + " is not positive");
    s += aj;
    if (s >= 1) throw CantorSpecError("partial sum reaches 1 at level " + std::to_string(j));
  }
}

bool certify_total_below_one(const CantorSpec& spec) {
  if (!spec.tail_bound) return false;
  return cantor_partial_sum(spec, spec.depth) + spec.tail_bound(spec.depth) < 1;
}

std::size_t growth_onset(const CantorSpec& spec) {
  auto g = [&](std::size_t n) {
    const Rational a = spec.a(n);
    return Rational(a * a * Rational(BigInt(1) << static_cast<unsigned>(n)));
  };
  std::size_t m = spec.depth;
  while (m > 0 && g(m - 1) < g(m)) --m;
  return m;
}

std::vector<Interval> cantor_level(const CantorSpec& spec, std::size_t n) {
  CantorSpec s = spec;
  s.depth = std::max(spec.depth, n);
  validate(s);
  std::vector<Interval> cur{{Rational(0), Rational(1)}};
  Rational scale = 1;  // 2^{-j}
  for (std::size_t j = 0; j <= n; ++j) {
    const Rational gap = spec.a(j) * scale;
    std::vector<Interval> next;
    next.reserve(cur.size() * 2);
    for (const auto& iv : cur) {
      const Rational side = (iv.hi - iv.lo - gap) / 2;
      next.push_back({iv.lo, iv.lo + side});
      next.push_back({iv.hi - side, iv.hi});
    }
    cur = std::move(next);
    scale /= 2;
  }
  return cur;
}

std::vector<std::vector<Interval>> cantor_build(const CantorSpec& spec) {
  validate(spec);
  std::vector<std::vector<Interval>> levels;
  for (std::size_t n = 0; n <= spec.depth; ++n) levels.push_back(cantor_level(spec, n));
  return levels;
}

SlopeWitness slope_witness(const CantorSpec& spec, std::size_t n, const Rational& mu) {
  if (n + 1 > spec.depth) throw std::out_of_range("slope witness needs n + 1 <= depth");
  if (sgn(mu) <= 0) throw std::invalid_argument("mu must be positive");
  validate(spec);
  SlopeWitness w;
  w.n = n;
  w.mu = mu;
  const Rational s_n = cantor_partial_sum(spec, n);
  const Rational a_next = spec.a(n + 1);
  const Rational two_n2(BigInt(1) << static_cast<unsigned>(n + 2));
  w.q = (1 - s_n) / two_n2;
  const Rational half_gap = a_next / two_n2;  // |J_{n+1}| / 2
  w.p = w.q - half_gap;
  w.qprime_cubed = half_gap * half_gap / mu;
  w.slope_cubed = w.qprime_cubed / (w.q * w.q * w.q);
  w.bound_cubed = a_next * a_next * two_n2 / mu;
  w.boundary_residual = (w.q - w.p) * (w.q - w.p) - mu * w.qprime_cubed;
  w.qprime = std::cbrt(to_double(w.qprime_cubed));
  w.slope = std::cbrt(to_double(w.slope_cubed));
  w.lower_bound = std::cbrt(to_double(w.bound_cubed));
  return w;
}

Rational distance_to(const std::vector<Interval>& k, const Rational& t) {
  if (k.empty()) throw std::invalid_argument("distance to an empty set");
  auto it = std::upper_bound(k.begin(), k.end(), t, [](const Rational& v, const Interval& iv) { return v < iv.lo; });
  Rational best = -1;
  if (it != k.end()) best = it->lo - t;
  if (it != k.begin()) {
    const auto& prev = *(it - 1);
    const Rational d = t <= prev.hi ? Rational(0) : Rational(t - prev.hi);
    if (sgn(best) < 0 || d < best) best = d;
  }
  return best;
}

namespace {

double distance_to(const std::vector<std::array<double, 2>>& k, double t) {
  auto it = std::upper_bound(k.begin(), k.end(), t, [](double v, const std::array<double, 2>& iv) { return v < iv[0]; });
  double best = std::numeric_limits<double>::infinity();
  if (it != k.end()) best = (*it)[0] - t;
  if (it != k.begin()) {
    const auto& prev = *(it - 1);
    best = std::min(best, t <= prev[1] ? 0.0 : t - prev[1]);
  }
  return best;
}

}  // namespace

SetOracle pathological_E(const CantorSpec& spec) {
  auto k = std::make_shared<const std::vector<Interval>>(cantor_level(spec, spec.depth));
  auto kd = std::make_shared<std::vector<std::array<double, 2>>>();
  for (const auto& iv : *k) kd->push_back({to_double(iv.lo), to_double(iv.hi)});
  SetOracle o;
  o.name = "pathE:" + std::to_string(spec.depth);
  o.contains_exact = [k](const Pt2<Rational>& x) {
    if (sgn(x[1]) < 0 || sgn(x[3]) < 0) return false;
    const Rational d = distance_to(*k, x[4]);
    return d * d <= 2 * x[1] * x[1] * x[1] * x[3];
  };
  o.contains = [kd](const Pt2<double>& x) {
    if (x[1] < 0 || x[3] < 0) return false;
    const double d = distance_to(*kd, x[4]);
    return d * d <= 2 * x[1] * x[1] * x[1] * x[3];
  };
  o.claimed_normal = x2_normal();
  o.is_cone = false;
  o.notes = "union of X5-translates of E1 by the level-" + std::to_string(spec.depth) + " Cantor intervals";
  return o;
}

// ---------------------------------------------------------------------------

BigInt z_sequence(const ZSpec& spec, std::size_t j) {
  if (j == 0) throw std::out_of_range("Z sequence is indexed from 1");
  if (spec.n1 <= 1) throw std::invalid_argument("n1 must exceed 1");
  BigInt n = spec.n1;
  for (std::size_t i = 1; i < j; ++i) n = n * n * n;
  return n;
}

ZSet z_set(const ZSpec& spec, const Rational& scale) {
  ZSet z;
  if (spec.kind == ZSpec::Kind::WholeLine) {
    z.whole_line = true;
    return z;
  }
  if (spec.kind == ZSpec::Kind::OnlyZero) return z;
  for (std::size_t j = spec.depth % 2 ? spec.depth : spec.depth - 1; j >= 1; j -= 2) {
    const BigInt n = z_sequence(spec, j);
    z.right.push_back({scale / Rational(BigInt(n * n * n)), scale / Rational(n)});
    if (j < 2) break;
  }
  return z;
}

namespace {

// Is there t in Z with (y - t)^2 <= h, looking only at t >= 0 intervals.
template <class T, class IV>
bool reach_right(const std::vector<IV>& right, const T& y, const T& h) {
  for (const auto& iv : right) {
    const T& lo = iv[0];
    const T& hi = iv[1];
    if (y > hi) {
      if ((y - hi) * (y - hi) <= h) return true;
    } else if (y > lo) {
      return true;
    } else if ((lo - y) * (lo - y) < h) {  // lo itself is excluded
      return true;
    }
  }
  return false;
}

template <class T, class IV>
bool z_reach(bool whole, const std::vector<IV>& right, const T& x5, const T& h) {
  if (whole) return true;
  if (x5 * x5 <= h) return true;
  return reach_right<T>(right, x5, h) || reach_right<T>(right, T(-x5), h);
}

}  // namespace

bool z_contains(const ZSet& z, const Rational& t) {
  if (z.whole_line || sgn(t) == 0) return z.whole_line || z.has_zero;
  const Rational a = abs(t);
  for (const auto& iv : z.right) {
    if (sgn(t) > 0 && a > iv.lo && a <= iv.hi) return true;
    if (sgn(t) < 0 && a > iv.lo && a <= iv.hi) return true;  // mirrored [-hi, -lo)
  }
  return false;
}

SetOracle blowup_oracle(const ZSpec& spec, const Rational& inv_r_cubed) {
  if (sgn(inv_r_cubed) <= 0) throw std::invalid_argument("scale must be positive");
  const ZSet z = z_set(spec, inv_r_cubed);
  using QIV = std::array<Rational, 2>;
  using DIV = std::array<double, 2>;
  auto rq = std::make_shared<std::vector<QIV>>();
  auto rd = std::make_shared<std::vector<DIV>>();
  for (const auto& iv : z.right) {
    rq->push_back({iv.lo, iv.hi});
    rd->push_back({to_double(iv.lo), to_double(iv.hi)});
  }
  const bool whole = z.whole_line;
  SetOracle o;
  o.name = "blowup:" + to_string(inv_r_cubed);
  o.contains_exact = [rq, whole](const Pt2<Rational>& x) {
    if (sgn(x[1]) < 0 || sgn(x[3]) < 0) return false;
    const Rational h = 2 * x[1] * x[1] * x[1] * x[3];
    return z_reach<Rational>(whole, *rq, x[4], h);
  };
  o.contains = [rd, whole](const Pt2<double>& x) {
    if (x[1] < 0 || x[3] < 0) return false;
    const double h = 2 * x[1] * x[1] * x[1] * x[3];
    return z_reach<double>(whole, *rd, x[4], h);
  };
  o.claimed_normal = x2_normal();
  o.notes = "dilation of the union of X5-translates of E1 over Z";
  return o;
}

Rational blowup_upper_scale(const ZSpec& spec, std::size_t l) {
  const BigInt n = z_sequence(spec, 2 * l + 1);
  return Rational(BigInt(n * n));
}

Rational blowup_lower_scale(const ZSpec& spec, std::size_t l) {
  if (l == 0) throw std::out_of_range("lower blow-up sequence starts at l = 1");
  const BigInt n = z_sequence(spec, 2 * l);
  return Rational(BigInt(n * n));
}

// ---------------------------------------------------------------------------

MonotonicityReport monotonicity_test(const SetOracle& oracle, const MonotonicityOptions& opts) {
  if (!oracle.claimed_normal) throw std::invalid_argument("oracle '" + oracle.name + "' has no claimed normal");
  const LieVec& nrm = *oracle.claimed_normal;
  const Rational n1 = nrm[0], n2 = nrm[1];
  if (sgn(n1) == 0 && sgn(n2) == 0) throw std::invalid_argument("claimed normal must be horizontal and nonzero");

  MonotonicityReport rep;
  rep.oracle = oracle.name;
  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<int> coin(0, 7);
  std::uniform_int_distribution<long> tk(1, 128);
  std::size_t attempts = 0;
  while (rep.points < opts.n_points && attempts < opts.max_attempts) {
    ++attempts;
    Pt2<Rational> x;
    for (auto& v : x.x) v = random_dyadic(rng, opts.box, 6);
    if (!oracle.contains_exact(x)) {
      ++rep.rejected;
      continue;
    }
    ++rep.points;
    for (std::size_t d = 0; d < opts.n_directions; ++d) {
      Rational a, b;
      if (coin(rng) == 0) {
        // Boundary direction of the half-space (orthogonal to the normal).
        const Rational s = random_dyadic(rng, 1, 6);
        a = -n2 * s;
        b = n1 * s;
      } else {
        a = random_dyadic(rng, 1, 6);
        b = random_dyadic(rng, 1, 6);
        if (n1 * a + n2 * b < 0) {
          a = -a;
          b = -b;
        }
      }
      for (std::size_t k = 0; k < opts.n_times; ++k) {
        const Rational t = make_rational(tk(rng), 64);
        const Pt2<Rational> y = mul2(x, exp_horizontal<Rational>(t * a, t * b));
        ++rep.checks;
        if (!oracle.contains_exact(y)) {
          ++rep.violations;
          if (!rep.first_violation) rep.first_violation = MonotonicityViolation{x, a, b, t};
        }
      }
    }
  }
  return rep;
}

}  // namespace carnot
