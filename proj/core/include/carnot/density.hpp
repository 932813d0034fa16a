#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "carnot/csets.hpp"
#include "carnot/f23.hpp"

namespace carnot {

struct DensityEstimate {
  double mean = 0;
  double half_width_95 = 0;  // 1.96 sqrt(mean (1 - mean) / n)
  std::uint64_t n_samples = 0;
  std::uint64_t hits = 0;
  double radius = 0;
  Pt2<double> center;
  std::string gauge = "box";
  std::uint64_t seed = 0;
};

// Sample `index` of stream `seed`: uniform in [-1, 1]^5, the unit box-gauge ball.
Pt2<double> unit_ball_sample(std::uint64_t seed, std::uint64_t index);

// Number of i < n with pred(center * delta_r(h_i)). Threads split the index
// range; 0 means hardware concurrency. The count does not depend on threads.
std::uint64_t count_hits(const std::function<bool(const Pt2<double>&)>& pred, const Pt2<double>& center,
                         double r, std::uint64_t n, std::uint64_t seed, unsigned threads = 0);

DensityEstimate mc_density(const SetOracle& oracle, const Pt2<double>& center, double r, std::uint64_t n,
                           std::uint64_t seed, unsigned threads = 0);

// Radius k uses its own sub-seed so the estimates are independent.
std::vector<DensityEstimate> density_profile(const SetOracle& oracle, const Pt2<double>& center,
                                             const std::vector<double>& radii, std::uint64_t n,
                                             std::uint64_t seed, unsigned threads = 0);
std::uint64_t profile_seed(std::uint64_t seed, std::size_t k);

// Two-sample z statistic for independent binomial estimates (0 if both degenerate).
double z_statistic(const DensityEstimate& a, const DensityEstimate& b);

struct BlowupPoint {
  std::size_t l = 0;
  Rational inv_r_cubed;
  DensityEstimate estimate;
};

struct BlowupResult {
  std::vector<BlowupPoint> upper;  // scales n_{2l+1}^2, tends to the E2 value
  std::vector<BlowupPoint> lower;  // scales n_{2l}^2, tends to the E1 value
  double final_gap = 0;
  double threshold = 0.1;
  bool separated() const { return final_gap > threshold; }
};

// Densities at 0 and radius 1 of the blow-ups, all on one shared sample stream.
BlowupResult blowup_experiment(const ZSpec& spec, std::size_t l_max, std::uint64_t n, std::uint64_t seed,
                               double threshold = 0.1, unsigned threads = 0);

// Gauge-ball pinching at x for a set that is precisely monotone along
// {a X1 + b X2 : b >= 0}: if x is in E then x S is in E, otherwise x S^{-1}
// misses E. Checked exactly on the sample points.
struct PinchingReport {
  bool member = false;
  std::uint64_t n = 0;
  std::uint64_t hits = 0;       // samples of the ball inside E
  std::uint64_t cone_hits = 0;  // samples inside x S (member) or x S^{-1} (non-member)
  std::uint64_t inclusion_failures = 0;
  double lower_bound() const { return member ? double(cone_hits) / double(n) : 0.0; }
  double upper_bound() const { return member ? 1.0 : 1.0 - double(cone_hits) / double(n); }
  bool ok() const { return inclusion_failures == 0; }
};

PinchingReport pinching_check(const SetOracle& oracle, const Pt2<Rational>& x, const Rational& r,
                              std::uint64_t n, std::uint64_t seed);

}  // namespace carnot
