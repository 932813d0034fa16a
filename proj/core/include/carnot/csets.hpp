#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "carnot/f23.hpp"
#include "carnot/lie.hpp"
#include "carnot/mpoly.hpp"

namespace carnot {

// Membership predicate in second-kind coordinates of F23, with an exact and a
// floating-point evaluation of the same set.
struct SetOracle {
  std::string name;
  std::function<bool(const Pt2<Rational>&)> contains_exact;
  std::function<bool(const Pt2<double>&)> contains;
  std::optional<LieVec> claimed_normal;  // horizontal element of f23_algebra()
  bool is_cone = false;
  std::string notes;
};

SetOracle halfspace_oracle();             // {x2 >= 0}
SetOracle halfspace_complement_oracle();  // {x2 < 0}, deliberately given normal X2
SetOracle e1_oracle();                    // {x2 >= 0, x4 >= 0, x5^2 <= 2 x2^3 x4}
SetOracle e2_oracle();                    // {x2 >= 0, x4 >= 0}
SetOracle semigroup_interior_oracle();    // {P > 0, x2 > 0}

// {x2 >= 0, (alpha x3 + beta x5)^2 <= 2 x2 x4 (alpha + beta x2)^2}.
SetOracle cone_ab(const Rational& alpha, const Rational& beta);

// Names: halfspace, halfspace-complement, E1, E2, S, coneAB:<a>:<b>,
// pathE:<depth>. Throws std::invalid_argument for unknown names.
SetOracle resolve_oracle(const std::string& name);

// ---- symbolic certificate for cone_ab ------------------------------------

struct CertificateStep {
  std::string name;
  bool passed = false;
  std::string lhs;
  std::string rhs;
};

struct CertificateReport {
  std::vector<CertificateStep> steps;
  MPoly derivative;     // X2 applied to the defining polynomial
  MPoly discriminant;   // B^2 - AC for derivative = A x1^2 + 2B x1 + C
  MPoly expansion;      // (alpha+beta x2)(alpha+3 beta x2) - (alpha - beta x2)^2
  bool ok() const;
};

// alpha, beta given as polynomials (constants or the variables "alpha",
// "beta" for the fully symbolic certificate).
CertificateReport cone_ab_certificate(const MPoly& alpha, const MPoly& beta);
CertificateReport cone_ab_certificate(const Rational& alpha, const Rational& beta);

// X2 applied to a polynomial in x1..x5 via the left-invariant field.
MPoly x2_derivative(const MPoly& p);

// ---- PDI sufficient conditions ---------------------------------------------

struct PdiSymbolicReport {
  RatFunc residual;
  bool certified_nonpositive = false;  // residual * den^2 is a nonpositive sum of even monomials
  std::string detail;
};

// (d5 F)^2 + 6 d4 F for F(x4, x5).
PdiSymbolicReport pdi_check_F(const RatFunc& F);
// (d3 G - G d5 G)^2 + 2 d4 G for G(x3, x4, x5).
PdiSymbolicReport pdi_check_graph(const RatFunc& G);

RatFunc diff(const RatFunc& f, const std::string& var);

using Field3 = std::function<double(double, double, double)>;
struct SampledGraphField {
  Field3 value, d3, d4, d5;
};
using Field2 = std::function<double(double, double)>;
struct SampledFField {
  Field2 value, d4, d5;  // arguments (x4, x5)
};

struct PdiSampledReport {
  std::size_t samples = 0;
  double worst_residual = -std::numeric_limits<double>::infinity();
  std::array<double, 3> worst_point{};
  double tolerance = 1e-9;
  bool ok() const { return worst_residual <= tolerance; }
};

struct SampleBox {
  std::array<double, 3> lo{-2, 0.05, -2};
  std::array<double, 3> hi{2, 2, 2};
};

PdiSampledReport pdi_check_graph(const SampledGraphField& G, const SampleBox& box, std::size_t n,
                                 std::uint64_t seed);
// Box coordinates 1 and 2 are used for (x4, x5).
PdiSampledReport pdi_check_F(const SampledFField& F, const SampleBox& box, std::size_t n,
                             std::uint64_t seed);

// F = f(C x5 - x4) + g(x4).
SampledFField fg_family(double C, std::function<double(double)> f, std::function<double(double)> df,
                        std::function<double(double)> g, std::function<double(double)> dg);

// ---- Cantor construction ---------------------------------------------------

class CantorSpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct CantorSpec {
  std::function<Rational(std::size_t)> a;           // a_j > 0
  std::size_t depth = 0;
  std::function<Rational(std::size_t)> tail_bound;  // optional: >= sum_{j > n} a_j
};

// a_j = 1/(j+4)^2 with tail bound sum_{j>n} a_j < 1/(n+4).
CantorSpec default_cantor_spec(std::size_t depth);

struct Interval {
  Rational lo, hi;
  friend bool operator==(const Interval&, const Interval&) = default;
};

Rational cantor_partial_sum(const CantorSpec& spec, std::size_t n);
// Throws CantorSpecError if some a_j <= 0 or the partial sums reach 1.
void validate(const CantorSpec& spec);
// Partial sum through depth plus tail bound < 1 (false if no tail bound).
bool certify_total_below_one(const CantorSpec& spec);
// Smallest m such that 2^n a_n^2 is strictly increasing on [m, depth].
std::size_t growth_onset(const CantorSpec& spec);

// The 2^(n+1) closed intervals left after removing the level-n gaps.
std::vector<Interval> cantor_level(const CantorSpec& spec, std::size_t n);
std::vector<std::vector<Interval>> cantor_build(const CantorSpec& spec);

struct SlopeWitness {
  std::size_t n = 0;
  Rational mu;
  Rational q;             // midpoint of the level-(n+1) gap in the leftmost interval
  Rational p;             // left end of that gap (closest point of K)
  Rational qprime_cubed;  // (|J_{n+1}|/2)^2 / mu
  Rational slope_cubed;   // (q'/q)^3
  Rational bound_cubed;   // (mu^{-1/3} 2^{(n+2)/3} a_{n+1}^{2/3})^3
  Rational boundary_residual;  // (q - p)^2 - mu q'^3, zero by construction
  double qprime = 0, slope = 0, lower_bound = 0;
};

SlopeWitness slope_witness(const CantorSpec& spec, std::size_t n, const Rational& mu = Rational(1));

// Exact distance from t to a sorted union of disjoint closed intervals.
Rational distance_to(const std::vector<Interval>& k, const Rational& t);

// Union of left-translates of E1 along X5 by K_depth.
SetOracle pathological_E(const CantorSpec& spec);

// ---- blow-up family --------------------------------------------------------

struct ZSpec {
  enum class Kind { Cubic, OnlyZero, WholeLine };
  Kind kind = Kind::Cubic;
  BigInt n1 = 2;
  std::size_t depth = 7;  // intervals for odd j <= depth
};

BigInt z_sequence(const ZSpec& spec, std::size_t j);  // n_j, n_{j+1} = n_j^3

// Z scaled by `scale`: {0}, half-open (lo, hi] on the right, mirrored [-hi, -lo).
struct ZSet {
  bool whole_line = false;
  bool has_zero = true;
  std::vector<Interval> right;  // disjoint (lo, hi], increasing
};

ZSet z_set(const ZSpec& spec, const Rational& scale = Rational(1));
bool z_contains(const ZSet& z, const Rational& t);

// delta_{1/r}(E) for E = union_{t in Z} (E1 + t e5), given s = r^{-3} exactly.
SetOracle blowup_oracle(const ZSpec& spec, const Rational& inv_r_cubed);
// r^{-3} for the two subsequences R_l and r_l.
Rational blowup_upper_scale(const ZSpec& spec, std::size_t l);  // n_{2l+1}^2
Rational blowup_lower_scale(const ZSpec& spec, std::size_t l);  // n_{2l}^2

// ---- monotonicity ----------------------------------------------------------

struct MonotonicityOptions {
  std::size_t n_points = 10000;
  std::size_t n_directions = 2;
  std::size_t n_times = 2;
  std::uint64_t seed = 1;
  long box = 2;             // members sampled from [-box, box]^5 on a dyadic grid
  std::size_t max_attempts = 5000000;
};

struct MonotonicityViolation {
  Pt2<Rational> x;
  Rational a, b, t;
};

struct MonotonicityReport {
  std::string oracle;
  std::size_t points = 0;
  std::size_t checks = 0;
  std::size_t violations = 0;
  std::size_t rejected = 0;
  std::optional<MonotonicityViolation> first_violation;
  bool passed() const { return violations == 0 && points > 0; }
};

MonotonicityReport monotonicity_test(const SetOracle& oracle, const MonotonicityOptions& opts = {});

}  // namespace carnot
