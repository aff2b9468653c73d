// Serial reference kernels against their OpenMP counterparts.
#include <benchmark/benchmark.h>

#include <complex>
#include <vector>

#include "autoseq/dfao.hpp"
#include "autoseq/kernels.hpp"

namespace {

using namespace autoseq;

const std::vector<int>& thue_morse(std::size_t n) {
  static std::vector<int> seq = [] {
    Dfao tm = parse_dfao("base 2\nstates A B\ninitial A\ntrans A: A B\ntrans B: B A\nout A: 0\nout B: 1\n");
    return generate_prefix(tm, std::size_t{1} << 20);
  }();
  static std::vector<int> out;
  out.assign(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(n));
  return out;
}

void BM_WindowsParallel(benchmark::State& state) {
  const auto& seq = thue_morse(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::distinct_windows(seq, 2, 32));
}
void BM_WindowsSerial(benchmark::State& state) {
  const auto& seq = thue_morse(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::distinct_windows_serial(seq, 2, 32));
}

void BM_ApParallel(benchmark::State& state) {
  const auto& seq = thue_morse(std::size_t{1} << 16);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::ap_words(seq, 2, 12, 4096, state.range(0), 0));
}
void BM_ApSerial(benchmark::State& state) {
  const auto& seq = thue_morse(std::size_t{1} << 16);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::ap_words_serial(seq, 2, 12, 4096, state.range(0), 0));
}

void BM_PolyParallel(benchmark::State& state) {
  const auto& seq = thue_morse(std::size_t{1} << 16);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::poly_words(seq, 2, 8, 2, state.range(0), 0));
}
void BM_PolySerial(benchmark::State& state) {
  const auto& seq = thue_morse(std::size_t{1} << 16);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::poly_words_serial(seq, 2, 8, 2, state.range(0), 0));
}

std::vector<std::complex<double>> signal(std::size_t n) {
  const auto& seq = thue_morse(n);
  std::vector<std::complex<double>> f;
  for (int x : seq) f.emplace_back(x ? -1.0 : 1.0, 0.0);
  return f;
}

void BM_CubesParallel(benchmark::State& state) {
  auto f = signal(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::interval_cube_sum(f, 2));
}
void BM_CubesSerial(benchmark::State& state) {
  auto f = signal(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::interval_cube_sum_serial(f, 2));
}

}  // namespace

BENCHMARK(BM_WindowsParallel)->Arg(1 << 12)->Arg(1 << 14);
BENCHMARK(BM_WindowsSerial)->Arg(1 << 12)->Arg(1 << 14);
BENCHMARK(BM_ApParallel)->Arg(16)->Arg(64);
BENCHMARK(BM_ApSerial)->Arg(16)->Arg(64);
BENCHMARK(BM_PolyParallel)->Arg(16)->Arg(32);
BENCHMARK(BM_PolySerial)->Arg(16)->Arg(32);
BENCHMARK(BM_CubesParallel)->Arg(128)->Arg(256);
BENCHMARK(BM_CubesSerial)->Arg(128)->Arg(256);

BENCHMARK_MAIN();
