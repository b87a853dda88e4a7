#include <benchmark/benchmark.h>

#include <random>

#include "bcw/kernels.hpp"

namespace {

bcw::ChannelSeries random_series(int p, int degree, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  bcw::ChannelSeries f(p, p);
  for (int n = -degree; n <= degree; ++n) {
    bcw::CMatrix c(p, p);
    for (int i = 0; i < p * p; ++i) c.data()[i] = {g(rng), g(rng)};
    if (n == 0) c += 4.0 * degree * p * bcw::CMatrix::Identity(p, p);
    f.set(n, c);
  }
  return f;
}

template <class Fn>
void run_sample(benchmark::State& state, Fn fn) {
  auto f = random_series(static_cast<int>(state.range(1)), 8, 1);
  auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fn(f, n));
}

void BM_SampleSerial(benchmark::State& s) {
  run_sample(s, [](const auto& f, std::size_t n) { return bcw::kernels::serial::sample(f, n); });
}
void BM_SampleOmp(benchmark::State& s) {
  run_sample(s, [](const auto& f, std::size_t n) { return bcw::kernels::omp::sample(f, n); });
}

template <class Fn>
void run_invert(benchmark::State& state, Fn fn) {
  auto f = random_series(static_cast<int>(state.range(1)), 8, 2);
  auto values = bcw::kernels::serial::sample(f, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fn(values));
}

void BM_InvertSerial(benchmark::State& s) {
  run_invert(s, [](const auto& v) { return bcw::kernels::serial::invert(v); });
}
void BM_InvertOmp(benchmark::State& s) {
  run_invert(s, [](const auto& v) { return bcw::kernels::omp::invert(v); });
}

template <class Fn>
void run_contour(benchmark::State& state, Fn fn) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  auto d = static_cast<Eigen::Index>(state.range(1));
  bcw::CMatrix a(d, d);
  for (Eigen::Index i = 0; i < d * d; ++i) a.data()[i] = {g(rng), g(rng)};
  a *= 0.3;
  for (auto _ : state) benchmark::DoNotOptimize(fn(a, static_cast<std::size_t>(state.range(0))));
}

void BM_ContourSerial(benchmark::State& s) {
  run_contour(s, [](const auto& a, std::size_t n) { return bcw::kernels::serial::resolvent_contour(a, n); });
}
void BM_ContourOmp(benchmark::State& s) {
  run_contour(s, [](const auto& a, std::size_t n) { return bcw::kernels::omp::resolvent_contour(a, n); });
}

template <class Fn>
void run_superosc(benchmark::State& state, Fn fn) {
  std::vector<double> ts(2001);
  for (std::size_t i = 0; i < ts.size(); ++i) ts[i] = -1.0 + 2.0 * static_cast<double>(i) / 2000.0;
  auto m = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fn(m, 4.0, ts));
}

void BM_SuperoscSerial(benchmark::State& s) {
  run_superosc(s, [](int m, double a, const auto& ts) { return bcw::kernels::serial::superosc_sup_error(m, a, ts); });
}
void BM_SuperoscOmp(benchmark::State& s) {
  run_superosc(s, [](int m, double a, const auto& ts) { return bcw::kernels::omp::superosc_sup_error(m, a, ts); });
}

}  // namespace

BENCHMARK(BM_SampleSerial)->Args({1024, 2})->Args({4096, 4});
BENCHMARK(BM_SampleOmp)->Args({1024, 2})->Args({4096, 4});
BENCHMARK(BM_InvertSerial)->Args({1024, 2})->Args({4096, 4});
BENCHMARK(BM_InvertOmp)->Args({1024, 2})->Args({4096, 4});
BENCHMARK(BM_ContourSerial)->Args({4096, 4})->Args({4096, 8});
BENCHMARK(BM_ContourOmp)->Args({4096, 4})->Args({4096, 8});
BENCHMARK(BM_SuperoscSerial)->Arg(128)->Arg(1024);
BENCHMARK(BM_SuperoscOmp)->Arg(128)->Arg(1024);

BENCHMARK_MAIN();
