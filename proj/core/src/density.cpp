#include "carnot/density.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "carnot/random.hpp"
#include "carnot/semigroup.hpp"

namespace carnot {

Pt2<double> unit_ball_sample(std::uint64_t seed, std::uint64_t index) {
  Pt2<double> h;
  for (std::uint64_t k = 0; k < 5; ++k) h[k] = 2.0 * unit_double(counter_key(seed, index, k)) - 1.0;
  return h;
}

std::uint64_t count_hits(const std::function<bool(const Pt2<double>&)>& pred, const Pt2<double>& center,
                         double r, std::uint64_t n, std::uint64_t seed, unsigned threads) {
  if (!(r > 0)) throw std::invalid_argument("radius must be positive");
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(1, n / 4096)));
  std::vector<std::uint64_t> counts(threads, 0);
  auto work = [&](unsigned w) {
    const std::uint64_t lo = n * w / threads, hi = n * (w + 1) / threads;
    std::uint64_t c = 0;
    for (std::uint64_t i = lo; i < hi; ++i)
      if (pred(mul2(center, dilate2_unchecked(r, unit_ball_sample(seed, i))))) ++c;
    counts[w] = c;
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  return total;
}

namespace {

DensityEstimate make_estimate(std::uint64_t hits, std::uint64_t n, double r, const Pt2<double>& center,
                              std::uint64_t seed) {
  DensityEstimate e;
  e.hits = hits;
  e.n_samples = n;
  e.mean = double(hits) / double(n);
  e.half_width_95 = 1.96 * std::sqrt(e.mean * (1 - e.mean) / double(n));
  e.radius = r;
  e.center = center;
  e.seed = seed;
  return e;
}

}  // namespace

DensityEstimate mc_density(const SetOracle& oracle, const Pt2<double>& center, double r, std::uint64_t n,
                           std::uint64_t seed, unsigned threads) {
  if (n == 0) throw std::invalid_argument("need at least one sample");
  return make_estimate(count_hits(oracle.contains, center, r, n, seed, threads), n, r, center, seed);
}

std::uint64_t profile_seed(std::uint64_t seed, std::size_t k) { return mix64(seed ^ mix64(k + 1)); }

std::vector<DensityEstimate> density_profile(const SetOracle& oracle, const Pt2<double>& center,
                                             const std::vector<double>& radii, std::uint64_t n,
                                             std::uint64_t seed, unsigned threads) {
  if (radii.empty()) throw std::invalid_argument("empty radius schedule");
  std::vector<DensityEstimate> out;
  for (std::size_t k = 0; k < radii.size(); ++k)
    out.push_back(mc_density(oracle, center, radii[k], n, profile_seed(seed, k), threads));
  return out;
}

double z_statistic(const DensityEstimate& a, const DensityEstimate& b) {
  const double va = a.mean * (1 - a.mean) / double(a.n_samples);
  const double vb = b.mean * (1 - b.mean) / double(b.n_samples);
  if (va + vb == 0) return a.mean == b.mean ? 0.0 : std::numeric_limits<double>::infinity();
  return (a.mean - b.mean) / std::sqrt(va + vb);
}

BlowupResult blowup_experiment(const ZSpec& spec, std::size_t l_max, std::uint64_t n, std::uint64_t seed,
                               double threshold, unsigned threads) {
  if (l_max == 0) throw std::invalid_argument("l_max must be at least 1");
  if (spec.kind == ZSpec::Kind::Cubic && spec.depth < 2 * l_max + 1)
    throw std::invalid_argument("truncation depth must be at least 2 l_max + 1");
  BlowupResult res;
  res.threshold = threshold;
  const Pt2<double> origin{};
  for (std::size_t l = 1; l <= l_max; ++l) {
    const Rational up = blowup_upper_scale(spec, l);
    const Rational lo = blowup_lower_scale(spec, l);
    res.upper.push_back({l, up, mc_density(blowup_oracle(spec, up), origin, 1.0, n, seed, threads)});
    res.lower.push_back({l, lo, mc_density(blowup_oracle(spec, lo), origin, 1.0, n, seed, threads)});
  }
  res.final_gap = res.upper.back().estimate.mean - res.lower.back().estimate.mean;
  return res;
}

PinchingReport pinching_check(const SetOracle& oracle, const Pt2<Rational>& x, const Rational& r,
                              std::uint64_t n, std::uint64_t seed) {
  if (sgn(r) <= 0) throw std::invalid_argument("radius must be positive");
  PinchingReport rep;
  rep.member = oracle.contains_exact(x);
  rep.n = n;
  for (std::uint64_t i = 0; i < n; ++i) {
    const Pt2<Rational> s = dilate2(r, convert<Rational>(unit_ball_sample(seed, i)));
    const Pt2<Rational> y = mul2(x, s);
    const bool in_e = oracle.contains_exact(y);
    rep.hits += in_e;
    if (rep.member) {
      if (member_S(s).verdict != SVerdict::Outside) {
        ++rep.cone_hits;
        if (!in_e) ++rep.inclusion_failures;
      }
    } else if (member_S(inv(s)).verdict != SVerdict::Outside) {
      ++rep.cone_hits;
      if (in_e) ++rep.inclusion_failures;
    }
  }
  return rep;
}

}  // namespace carnot
