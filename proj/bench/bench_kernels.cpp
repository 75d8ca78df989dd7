#include <benchmark/benchmark.h>

#include <cmath>

#include "fzeta/operator.hpp"
#include "fzeta/parallel.hpp"
#include "fzeta/shift_kernel.hpp"
#include "fzeta/universality.hpp"

using namespace fzeta;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(0) == 0 ? Exec::Serial : Exec::Parallel; }

void label(benchmark::State& state) { state.SetLabel(state.range(0) == 0 ? "serial" : "parallel"); }

void BM_ShiftGrid(benchmark::State& state) {
  const auto box = CompactBox::rectangle(0.74, 0.76, 0.05, 5, 5);
  const auto pts = box.points();
  const ShiftGrid grid{0.01, 0, state.range(1)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate_shift_grid(BaseFunction::zeta(), pts, grid, {}, exec_of(state)));
  }
  state.SetItemsProcessed(state.iterations() * state.range(1) * static_cast<std::int64_t>(pts.size()));
  label(state);
}
BENCHMARK(BM_ShiftGrid)->ArgsProduct({{0, 1}, {1000, 10000}})->Unit(benchmark::kMillisecond);

void BM_SpectralOperator(benchmark::State& state) {
  const auto f = SampledFunction::sample(-40.0, 40.0, 1e-2, 2.0, [](double t) { return cplx(std::exp(-t * t / 2.0)); });
  for (auto _ : state) benchmark::DoNotOptimize(apply_spectral_operator(f, state.range(1), exec_of(state)));
  label(state);
}
BENCHMARK(BM_SpectralOperator)->ArgsProduct({{0, 1}, {100, 1000}})->Unit(benchmark::kMillisecond);

void BM_ScanContinuous(benchmark::State& state) {
  const auto box = CompactBox::rectangle(0.6, 0.9, 1.0, 16, 16);
  ScanOptions opts;
  opts.exec = exec_of(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        scan_continuous(TargetFunction::constant(1.0), box, BaseFunction::zeta(), state.range(1), 0.05, {}, opts));
  }
  label(state);
}
BENCHMARK(BM_ScanContinuous)->ArgsProduct({{0, 1}, {50}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
