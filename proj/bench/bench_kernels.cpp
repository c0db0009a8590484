// Parallel kernels against their serial references.
#include <benchmark/benchmark.h>

#include <vector>

#include "tailbound/class_spec.hpp"
#include "tailbound/figure.hpp"
#include "tailbound/validation.hpp"

namespace {

std::vector<tailbound::ClassSpec> variance_classes() {
  return std::vector<tailbound::ClassSpec>(6, tailbound::VarianceClassSpec{0.3, 0.15});
}

void BM_ValidateParallel(benchmark::State& state) {
  const auto classes = variance_classes();
  for (auto _ : state) {
    auto rep = tailbound::validate_bound(classes, 4.0, 1.0, static_cast<int>(state.range(0)), 7);
    benchmark::DoNotOptimize(rep.max_tail);
  }
}

void BM_ValidateSerial(benchmark::State& state) {
  const auto classes = variance_classes();
  for (auto _ : state) {
    auto rep = tailbound::validate_bound_serial(classes, 4.0, 1.0, static_cast<int>(state.range(0)), 7);
    benchmark::DoNotOptimize(rep.max_tail);
  }
}

void BM_PanelParallel(benchmark::State& state) {
  for (auto _ : state) {
    auto panel = tailbound::compute_panel(0.5, 12.0);
    benchmark::DoNotOptimize(panel.rows.data());
  }
}

void BM_PanelSerial(benchmark::State& state) {
  for (auto _ : state) {
    auto panel = tailbound::compute_panel_serial(0.5, 12.0);
    benchmark::DoNotOptimize(panel.rows.data());
  }
}

}  // namespace

BENCHMARK(BM_ValidateParallel)->Arg(200)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ValidateSerial)->Arg(200)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PanelParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PanelSerial)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
