#include <benchmark/benchmark.h>

#include "qexp/grover_search.hpp"
#include "qexp/nnl_degree.hpp"
#include "qexp/polytope_factors.hpp"
#include "qexp/sim_expect.hpp"
#include "qexp/sos_degree.hpp"

namespace {

using namespace qexp;

void BM_NnlDegreeShiftedSquare(benchmark::State& state) {
  const auto f = library::shifted_weight_square(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(nnl_degree(f).degree);
}
BENCHMARK(BM_NnlDegreeShiftedSquare)->DenseRange(2, 6)->Unit(benchmark::kMillisecond);

void BM_SosFeasibleWeightQuadratic(benchmark::State& state) {
  const auto f = library::weight_quadratic(static_cast<int>(state.range(0)), 1, 2);
  for (auto _ : state) benchmark::DoNotOptimize(sos_feasible(f, 2).index());
}
BENCHMARK(BM_SosFeasibleWeightQuadratic)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

void BM_SimulateQuantum(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto alg = synthesize_quantum(sos_degree(library::shifted_weight_square(n)).decomposition);
  Point x = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_quantum_exact(alg, x).simulated);
    x = (x + 1) % cube_size(n);
  }
}
BENCHMARK(BM_SimulateQuantum)->DenseRange(4, 12, 4);

void BM_TailoredSearch(benchmark::State& state) {
  const auto m = state.range(0);
  const auto plan = make_plan(m, 4);
  for (auto _ : state) {
    double s = 0.0;
    for (std::int64_t k = 0; k <= m; ++k) s += tailored_search(plan, k).no_solution;
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_TailoredSearch)->RangeMultiplier(4)->Range(16, 1024);

void BM_MatchingSlackApprox(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(matching_slack_approx(n, 0.3).violations);
}
BENCHMARK(BM_MatchingSlackApprox)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

void BM_AndComposeRank(benchmark::State& state) {
  const auto m = and_compose(library::shifted_weight_square(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(matrix_rank(m));
}
BENCHMARK(BM_AndComposeRank)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
