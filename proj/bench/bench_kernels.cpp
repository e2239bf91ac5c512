// Serial reference kernels against their OpenMP versions.

#include <benchmark/benchmark.h>

#include <random>

#include "cubeplan/catalogue.hpp"
#include "cubeplan/complex.hpp"
#include "cubeplan/topology.hpp"

using namespace cubeplan;

namespace {

std::shared_ptr<const System> hex_system() {
  BuiltinParams p;
  p.n = 4;
  p.variant = "changing";
  p.radius = 4;
  return builtin_system("hex", p);
}

const StateComplex& hex_complex() {
  static const StateComplex c = [] {
    auto sys = hex_system();
    return build_complex(sys, sys->seeds());
  }();
  return c;
}

BitMatrix random_matrix(std::size_t n) {
  std::mt19937_64 rng(1);
  BitMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (int k = 0; k < 8; ++k) m.flip(r, rng() % n);
  return m;
}

void BM_BuildSerial(benchmark::State& state) {
  auto sys = hex_system();
  for (auto _ : state) benchmark::DoNotOptimize(build_complex_serial(sys, sys->seeds()).vertex_count());
}

void BM_BuildParallel(benchmark::State& state) {
  auto sys = hex_system();
  BuildOptions o;
  o.threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_complex(sys, sys->seeds(), o).vertex_count());
}

void BM_LinkSerial(benchmark::State& state) {
  const auto& c = hex_complex();
  for (auto _ : state) benchmark::DoNotOptimize(check_link_condition_serial(c).ok);
}

void BM_LinkParallel(benchmark::State& state) {
  const auto& c = hex_complex();
  for (auto _ : state) benchmark::DoNotOptimize(check_link_condition(c, static_cast<int>(state.range(0))).ok);
}

void BM_RankSerial(benchmark::State& state) {
  auto m = random_matrix(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(rank_mod2_serial(m));
}

void BM_RankParallel(benchmark::State& state) {
  auto m = random_matrix(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(rank_mod2(m, static_cast<int>(state.range(1))));
}

}  // namespace

BENCHMARK(BM_BuildSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BuildParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LinkSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LinkParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RankSerial)->Arg(1024)->Arg(2048)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RankParallel)->Args({1024, 1})->Args({1024, 4})->Args({2048, 1})->Args({2048, 4})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
