#include <benchmark/benchmark.h>

#include <random>

#include "carnot/density.hpp"
#include "carnot/f23.hpp"
#include "carnot/free_lie.hpp"
#include "carnot/random.hpp"
#include "carnot/semigroup.hpp"

using namespace carnot;

namespace {

Pt2<Rational> rand_q(std::mt19937_64& rng) {
  Pt2<Rational> p;
  for (auto& v : p.x) v = random_rational(rng, -3, 3, 9);
  return p;
}

void BM_Mul2Double(benchmark::State& st) {
  Pt2<double> x{{0.3, -1.2, 0.7, 2.0, -0.1}}, y{{1.1, 0.4, -0.6, 0.2, 0.9}};
  for (auto _ : st) {
    x = mul2(x, y);
    benchmark::DoNotOptimize(x);
    x[0] = 0.3;
  }
}
BENCHMARK(BM_Mul2Double);

void BM_Mul2Rational(benchmark::State& st) {
  std::mt19937_64 rng(1);
  const auto x = rand_q(rng), y = rand_q(rng);
  for (auto _ : st) benchmark::DoNotOptimize(mul2(x, y));
}
BENCHMARK(BM_Mul2Rational);

void BM_Bch(benchmark::State& st) {
  const auto alg = st.range(0) == 3 ? f23_algebra() : f24_algebra();
  std::mt19937_64 rng(2);
  LieVec u(alg), v(alg);
  for (std::size_t i = 0; i < alg->dim(); ++i) {
    u[i] = random_rational(rng, -2, 2, 5);
    v[i] = random_rational(rng, -2, 2, 5);
  }
  for (auto _ : st) benchmark::DoNotOptimize(bch(u, v));
}
BENCHMARK(BM_Bch)->Arg(3)->Arg(4);

void BM_MemberS(benchmark::State& st) {
  std::mt19937_64 rng(3);
  const auto x = rand_q(rng);
  for (auto _ : st) benchmark::DoNotOptimize(member_S(x));
}
BENCHMARK(BM_MemberS);

void BM_GmapJacobianDet(benchmark::State& st) {
  const MPoly a = MPoly::variable("a"), b = MPoly::variable("b"), c = MPoly::variable("c");
  const std::vector<std::string> names{"a", "b", "c"};
  for (auto _ : st) {
    const auto g = gmap(a, b, c);
    const auto J = jacobian(std::span<const MPoly>(g.data(), 3), names);
    PolyMatrix3 m;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m[i][j] = J[i][j];
    benchmark::DoNotOptimize(det3(m));
  }
}
BENCHMARK(BM_GmapJacobianDet)->Unit(benchmark::kMicrosecond);

void BM_DensityE1(benchmark::State& st) {
  const SetOracle e1 = e1_oracle();
  const Pt2<double> o{{0, 0, 0, 0, 0}};
  for (auto _ : st)
    benchmark::DoNotOptimize(count_hits(e1.contains, o, 1.0, static_cast<std::uint64_t>(st.range(0)), 1, 1));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}
BENCHMARK(BM_DensityE1)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
