#include <benchmark/benchmark.h>

#include <random>

#include "sobolab/construction.hpp"
#include "sobolab/fourier.hpp"
#include "sobolab/homeo.hpp"
#include "sobolab/seminorm.hpp"
#include "sobolab/stieltjes.hpp"

using namespace sobolab;

namespace {

const Modulus kThird = Modulus::power(1.0 / 3.0);

void BM_HalfSeminorm(benchmark::State& state) {
  const TriangleSystem sys = build_system(kThird, static_cast<int>(state.range(0)));
  const PiecewiseLinear u = build_u(sys);
  for (auto _ : state) benchmark::DoNotOptimize(pl_half_seminorm(u));
  state.counters["knots"] = static_cast<double>(u.size());
}
BENCHMARK(BM_HalfSeminorm)->DenseRange(2, 6, 2)->Unit(benchmark::kMillisecond);

void BM_HalfSeminormDirect(benchmark::State& state) {
  const TriangleSystem sys = build_system(kThird, static_cast<int>(state.range(0)));
  const PiecewiseLinear u = build_u(sys);
  for (auto _ : state) benchmark::DoNotOptimize(pl_half_seminorm_direct(u));
  state.counters["knots"] = static_cast<double>(u.size());
}
BENCHMARK(BM_HalfSeminormDirect)->DenseRange(2, 4, 1)->Unit(benchmark::kMillisecond);

void BM_PlSpectrum(benchmark::State& state) {
  const PiecewiseLinear u = build_u(build_system(kThird, 3));
  const int kmax = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(pl_spectrum(u, kmax));
}
BENCHMARK(BM_PlSpectrum)->RangeMultiplier(8)->Range(64, 1 << 15);

void BM_DftCoeffs(benchmark::State& state) {
  const PiecewiseLinear u = build_u(build_system(kThird, 3));
  const GridFunction g = sample(u, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(dft_coeffs(g));
}
BENCHMARK(BM_DftCoeffs)->RangeMultiplier(4)->Range(1 << 10, 1 << 16);

void BM_RsIntegral(benchmark::State& state) {
  const TriangleSystem sys = build_system(kThird, static_cast<int>(state.range(0)));
  const PiecewiseLinear v = build_v(sys);
  const PiecewiseLinear un = truncate_un(build_u(sys), truncation_grid(sys).back());
  for (auto _ : state) benchmark::DoNotOptimize(rs_integral(v, un));
}
BENCHMARK(BM_RsIntegral)->DenseRange(2, 6, 2);

void BM_Superpose(benchmark::State& state) {
  const PiecewiseLinear u = build_u(build_system(kThird, 4));
  std::mt19937_64 rng(7);
  const Homeomorphism h = Homeomorphism::random(static_cast<int>(state.range(0)), 1.0, rng);
  for (auto _ : state) benchmark::DoNotOptimize(superpose(u, h));
}
BENCHMARK(BM_Superpose)->Arg(32)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
