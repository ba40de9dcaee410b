// OpenMP kernels against their serial twins on the same inputs.

#include <benchmark/benchmark.h>

#include "combs/backbone.hpp"
#include "combs/comb.hpp"
#include "combs/paintbox.hpp"
#include "combs/parallel.hpp"
#include "combs/stats.hpp"

namespace {

auto replicate_kernel(combs::Rng& r, std::int64_t) {
  auto c = combs::sample_kingman_comb(r, 200);
  return c.max_time();
}

void bm_map_replicates_omp(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(combs::map_replicates(1, state.range(0), replicate_kernel));
  }
}

void bm_map_replicates_serial(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(combs::serial::map_replicates(1, state.range(0), replicate_kernel));
  }
}

auto sample_positions(std::size_t n) -> std::vector<double> {
  auto rng = combs::Rng{2};
  auto out = std::vector<double>(n);
  for (auto& x : out) {
    x = rng.uniform();
  }
  return out;
}

auto bench_comb() -> const combs::Comb& {
  static const auto comb = [] {
    auto rng = combs::Rng{3};
    return combs::sample_kingman_comb(rng, 500);
  }();
  return comb;
}

void bm_distance_matrix_omp(benchmark::State& state) {
  auto pos = sample_positions(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(combs::distance_matrix(pos, bench_comb()));
  }
}

void bm_distance_matrix_serial(benchmark::State& state) {
  auto pos = sample_positions(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(combs::serial::distance_matrix(pos, bench_comb()));
  }
}

void bm_validate_ultrametric_omp(benchmark::State& state) {
  auto d = combs::distance_matrix(sample_positions(static_cast<std::size_t>(state.range(0))), bench_comb());
  for (auto _ : state) {
    benchmark::DoNotOptimize(combs::validate_ultrametric(d));
  }
}

void bm_validate_ultrametric_serial(benchmark::State& state) {
  auto d = combs::distance_matrix(sample_positions(static_cast<std::size_t>(state.range(0))), bench_comb());
  for (auto _ : state) {
    benchmark::DoNotOptimize(combs::serial::validate_ultrametric(d));
  }
}

auto sample_points(std::size_t n, std::uint64_t seed) -> std::vector<combs::Point3> {
  auto rng = combs::Rng{seed};
  auto out = std::vector<combs::Point3>(n);
  for (auto& p : out) {
    p = {rng.uniform(), rng.uniform(), rng.uniform()};
  }
  return out;
}

void bm_energy_omp(benchmark::State& state) {
  auto x = sample_points(static_cast<std::size_t>(state.range(0)), 4);
  auto y = sample_points(static_cast<std::size_t>(state.range(0)), 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(combs::energy_coefficient(x, y));
  }
}

void bm_energy_serial(benchmark::State& state) {
  auto x = sample_points(static_cast<std::size_t>(state.range(0)), 4);
  auto y = sample_points(static_cast<std::size_t>(state.range(0)), 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(combs::serial::energy_coefficient(x, y));
  }
}

}  // namespace

BENCHMARK(bm_map_replicates_omp)->Arg(2000);
BENCHMARK(bm_map_replicates_serial)->Arg(2000);
BENCHMARK(bm_distance_matrix_omp)->Arg(400);
BENCHMARK(bm_distance_matrix_serial)->Arg(400);
BENCHMARK(bm_validate_ultrametric_omp)->Arg(200);
BENCHMARK(bm_validate_ultrametric_serial)->Arg(200);
BENCHMARK(bm_energy_omp)->Arg(2000);
BENCHMARK(bm_energy_serial)->Arg(2000);
BENCHMARK_MAIN();
