#include <benchmark/benchmark.h>

#include "pmtlab/adm_mass.hpp"
#include "pmtlab/conformal.hpp"
#include "pmtlab/curvature.hpp"
#include "pmtlab/metric_zoo.hpp"
#include "pmtlab/smoothing.hpp"

namespace {

pmt::MetricField rough_metric(int nodes) {
  const pmt::Grid grid = pmt::Grid::make(8.0, nodes, 3.0);
  return pmt::sample(pmt::rough_conformal({}).metric, grid);
}

void BM_ScalarCurvature(benchmark::State& state) {
  const pmt::MetricField g = rough_metric(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(pmt::scalar_curvature_fd(g));
}
BENCHMARK(BM_ScalarCurvature)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_Mollify(benchmark::State& state) {
  const pmt::MetricField g = rough_metric(static_cast<int>(state.range(0)));
  const pmt::ChartCover cover(3.0);
  for (auto _ : state) benchmark::DoNotOptimize(pmt::mollify_family(g, cover, 1.0));
}
BENCHMARK(BM_Mollify)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_OperatorApply(benchmark::State& state) {
  const pmt::MetricField g = rough_metric(static_cast<int>(state.range(0)));
  const pmt::ScalarField v(g.grid().with_ghost(0), 0.01);
  const pmt::EllipticOperator op(g, v, pmt::Constants::with_sobolev(0.18255));
  pmt::ScalarField x(op.grid(), 0.0), y(op.grid(), 0.0);
  const int n = op.grid().nodes();
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) x(i, j, k) = 1.0;
  for (auto _ : state) {
    op.apply(x, y);
    benchmark::ClobberMemory();
  }
}
BENCHMARK(BM_OperatorApply)->Arg(32)->Arg(64)->Arg(96)->Unit(benchmark::kMillisecond);

void BM_AdmMass(benchmark::State& state) {
  const pmt::MetricField g = rough_metric(64);
  const std::vector<double> radii{5.6, 6.4, 7.2};
  for (auto _ : state) benchmark::DoNotOptimize(pmt::adm_mass(g, radii));
}
BENCHMARK(BM_AdmMass)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
