#include <benchmark/benchmark.h>

#include <complex>

#include "rpz/ensembles.hpp"
#include "rpz/kernels.hpp"
#include "rpz/qe.hpp"
#include "rpz/statistics.hpp"
#include "rpz/zeros_crits.hpp"

namespace {

using cd = std::complex<double>;

void bm_szego_eval(benchmark::State& state) {
  const int degree = static_cast<int>(state.range(0));
  const cd z(0.37, -0.81), w(-1.24, 0.55);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rpz::szego_su2_normalized(degree, z, w));
  }
}
BENCHMARK(bm_szego_eval)->Arg(16)->Arg(256)->Arg(4096);

void bm_sample_gaussian(benchmark::State& state) {
  const int degree = static_cast<int>(state.range(0));
  const rpz::EnsembleSpec spec{rpz::Family::Su2Poly, degree, rpz::Measure::Gaussian, 42};
  int batch = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rpz::sample_gaussian(spec, 1, batch++));
  }
}
BENCHMARK(bm_sample_gaussian)->Arg(100)->Arg(1000);

void bm_find_zeros(benchmark::State& state) {
  const int degree = static_cast<int>(state.range(0));
  const rpz::EnsembleSpec spec{rpz::Family::Su2Poly, degree, rpz::Measure::Gaussian, 42};
  const auto samples = rpz::sample_gaussian(spec, 8, 0);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rpz::find_zeros(samples[i++ % samples.size()]));
  }
}
BENCHMARK(bm_find_zeros)->Arg(25)->Arg(100)->Unit(benchmark::kMillisecond);

void bm_find_critical_points(benchmark::State& state) {
  const int degree = static_cast<int>(state.range(0));
  const rpz::EnsembleSpec spec{rpz::Family::Su2Poly, degree, rpz::Measure::Gaussian, 42};
  const auto samples = rpz::sample_gaussian(spec, 8, 0);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rpz::find_critical_points(samples[i++ % samples.size()]));
  }
}
BENCHMARK(bm_find_critical_points)->Arg(25)->Arg(50)->Unit(benchmark::kMillisecond);

void bm_pair_correlation(benchmark::State& state) {
  const int degree = 50;
  const rpz::EnsembleSpec spec{rpz::Family::Su2Poly, degree, rpz::Measure::Gaussian, 7};
  const auto samples = rpz::sample_zero_processes(spec, 200);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rpz::pair_correlation_mc(samples, degree, 20, 4.0));
  }
}
BENCHMARK(bm_pair_correlation)->Unit(benchmark::kMillisecond);

void bm_s2_statistic(benchmark::State& state) {
  const int degree = static_cast<int>(state.range(0));
  const auto f = rpz::SymbolFunction::even_quadrupole();
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rpz::s2_statistic(degree, f, 2, seed++));
  }
}
BENCHMARK(bm_s2_statistic)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
