// Parallel kernels against their serial references. Run with
// --benchmark_counters_tabular=true for a compact table; OMP_NUM_THREADS
// controls the parallel side.
#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "sharp/kernels.hpp"

using namespace sharp;

namespace {

std::vector<radial::RadialFunction> functions(std::size_t count) {
  std::vector<radial::RadialFunction> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(radial::random_admissible(i, 2 + i % 9, 2.0 + (i % 5) * 2.0, 0.5 + (i % 4)));
  }
  return out;
}

std::vector<sphere::AxiFunction> band_limited(std::size_t count) {
  std::vector<sphere::AxiFunction> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(sphere::random_band_limited(i, 1 + i % 8, 1.0));
  }
  return out;
}

std::vector<double> masses(std::size_t count) {
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = 0.6 * std::pow(1e4 / 0.6, double(i) / count);
  return out;
}

template <auto Kernel>
void deficits(benchmark::State& state) {
  const auto us = functions(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(Kernel(us, 2.5, radial::Statement::Consistent));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Kernel>
void onofri(benchmark::State& state) {
  const auto fs = band_limited(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(fs));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Kernel>
void extremal_sweep(benchmark::State& state) {
  const auto as = masses(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(3.0, as));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(deficits<kernels::deficit_batch_serial>)->Name("deficit/serial")->Arg(64)->Arg(512)->UseRealTime();
BENCHMARK(deficits<kernels::deficit_batch>)->Name("deficit/parallel")->Arg(64)->Arg(512)->UseRealTime();
BENCHMARK(onofri<kernels::onofri_batch_serial>)->Name("onofri/serial")->Arg(64)->Arg(512)->UseRealTime();
BENCHMARK(onofri<kernels::onofri_batch>)->Name("onofri/parallel")->Arg(64)->Arg(512)->UseRealTime();
BENCHMARK(extremal_sweep<kernels::extremal_deficit_sweep_serial>)->Name("sweep/serial")->Arg(1024)->UseRealTime();
BENCHMARK(extremal_sweep<kernels::extremal_deficit_sweep>)->Name("sweep/parallel")->Arg(1024)->UseRealTime();

BENCHMARK_MAIN();
