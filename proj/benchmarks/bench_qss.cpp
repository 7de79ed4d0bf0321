#include <benchmark/benchmark.h>

#include <numeric>
#include <vector>

#include "qss/adversary.hpp"
#include "qss/field.hpp"
#include "qss/protocol.hpp"
#include "qss/qudit.hpp"

using namespace qss;

static void BM_MubVector(benchmark::State& state) {
  const Fe d = static_cast<Fe>(state.range(0));
  Fe l = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mub_vector(d, {1, l}));
    l = (l + 1) % d;
  }
}
BENCHMARK(BM_MubVector)->Arg(5)->Arg(11)->Arg(97);

static void BM_ApplyXY(benchmark::State& state) {
  const Fe d = static_cast<Fe>(state.range(0));
  QuditState s = mub_vector(d, {0, 0});
  for (auto _ : state) {
    s = apply_xy(s, 1, 2);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_ApplyXY)->Arg(5)->Arg(11)->Arg(97);

static void BM_MeasureMub(benchmark::State& state) {
  const Fe d = static_cast<Fe>(state.range(0));
  const QuditState s = mub_vector(d, {0, 0});
  Rng rng(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(measure_mub(s, 1, rng));
  }
}
BENCHMARK(BM_MeasureMub)->Arg(5)->Arg(11);

static void BM_LagrangeAtZero(benchmark::State& state) {
  const Fe d = 101;
  const int t = static_cast<int>(state.range(0));
  std::vector<std::pair<Fe, Fe>> pts;
  for (int i = 1; i <= t; ++i) pts.emplace_back(static_cast<Fe>(i), static_cast<Fe>(i * 7 % d));
  for (auto _ : state) {
    benchmark::DoNotOptimize(lagrange_at_zero(pts, d));
  }
}
BENCHMARK(BM_LagrangeAtZero)->Arg(2)->Arg(5)->Arg(20);

static void BM_HonestSession(benchmark::State& state) {
  const Fe d = static_cast<Fe>(state.range(0));
  const int t = static_cast<int>(state.range(1));
  const SchemeParams params = SchemeParams::make(d, t, t);
  std::vector<int> rs(static_cast<size_t>(t));
  std::iota(rs.begin(), rs.end(), 1);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_session(params, 1, rs, {}, seed++));
  }
}
BENCHMARK(BM_HonestSession)->Args({5, 2})->Args({11, 4})->Args({31, 8});

static void BM_InterceptResendTrial(benchmark::State& state) {
  const SchemeParams params = SchemeParams::make(5, 3, 3);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(attack_intercept_resend(params, 2, 1, seed++, 1));
  }
}
BENCHMARK(BM_InterceptResendTrial);

BENCHMARK_MAIN();
