#include <benchmark/benchmark.h>

#include "csgame/ef_pebble.hpp"
#include "csgame/game.hpp"
#include "csgame/logic.hpp"
#include "csgame/separators.hpp"

using namespace csgame;

static void BM_MinSizeLinear(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Family a = Family::sentence(linear_order(n));
  const Family b = Family::sentence(linear_order(n + 1));
  GameConfig cfg;
  cfg.m = 2;
  cfg.t = 1;
  for (auto _ : state) benchmark::DoNotOptimize(min_distinguishing_size(a, b, cfg, 8));
}
BENCHMARK(BM_MinSizeLinear)->DenseRange(1, 2)->Unit(benchmark::kMillisecond);

static void BM_EvalUpperBound(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const FormulaPtr f = upper_bound_formula(n, 2);
  const auto s = linear_order(n + 1);
  for (auto _ : state) benchmark::DoNotOptimize(eval(*s, {}, *f));
}
BENCHMARK(BM_EvalUpperBound)->RangeMultiplier(2)->Range(4, 64);

static void BM_MinimalSeparatorRoot(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Family a = zero_root(linear_order(n, false));
  const Family b = zero_root(linear_order(n + 1, false));
  for (auto _ : state) benchmark::DoNotOptimize(minimal_separator(a, b));
}
BENCHMARK(BM_MinimalSeparatorRoot)->DenseRange(2, 10, 4);

static void BM_Lemma5Prop2(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Family a = zero_root(linear_order(n, false));
  const Family b = zero_root(linear_order(n + 1, false));
  const StrategyTree tree = formula_to_tree(upper_bound_formula(n, 1), a, b);
  for (auto _ : state) benchmark::DoNotOptimize(verify_lemma5(tree, 1));
}
BENCHMARK(BM_Lemma5Prop2)->DenseRange(2, 8, 3)->Unit(benchmark::kMillisecond);

static void BM_LinearStrategyCheck(benchmark::State& state) {
  const int len = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(verify_linear_strategy(len, len + 3, 2, 2, 2));
}
BENCHMARK(BM_LinearStrategyCheck)->Arg(9)->Arg(15)->Unit(benchmark::kMillisecond);

static void BM_EfExhaustive(benchmark::State& state) {
  const Structure a = make_linear_order(3, false);
  const Structure b = make_linear_order(4, false);
  for (auto _ : state) benchmark::DoNotOptimize(duplicator_wins_exhaustive(a, b, 2, 2, 2));
}
BENCHMARK(BM_EfExhaustive);
BENCHMARK_MAIN();
