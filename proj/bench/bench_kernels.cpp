// Serial reference vs OpenMP dispatch for the data-parallel kernels.
// Run as: bench_kernels [--benchmark_filter=...]

#include <benchmark/benchmark.h>

#include <complex>
#include <random>
#include <vector>

#include "circdom/geometry.hpp"
#include "circdom/kernels.hpp"
#include "circdom/rational.hpp"
#include "circdom/types.hpp"

namespace {

using circdom::Complex;
namespace kernels = circdom::kernels;

std::vector<Complex> grid_points(int n) {
  const auto domain = circdom::annulus(0.5, 2.0);
  int radial = 8;
  while (radial * 4 * radial < n) radial *= 2;
  auto pts = circdom::polar_grid(domain, radial, 4 * radial, 0.0);
  pts.resize(static_cast<std::size_t>(n));
  return pts;
}

circdom::ComplexRational test_rational() {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> ang(0.0, circdom::kTwoPi);
  std::vector<Complex> zeros, poles;
  for (int i = 0; i < 6; ++i) zeros.push_back(std::polar(1.2, ang(rng)));
  for (int i = 0; i < 3; ++i) poles.push_back(std::polar(0.3, ang(rng)));
  return circdom::ComplexRational(zeros, poles, Complex(1.3, -0.4));
}

std::vector<Complex> circle_samples(int n) {
  std::vector<Complex> out(static_cast<std::size_t>(n));
  const auto f = test_rational();
  for (int m = 0; m < n; ++m)
    out[static_cast<std::size_t>(m)] =
        f(1.2 * std::polar(1.0, circdom::kTwoPi * m / n));
  return out;
}

void bm_map_eval_serial(benchmark::State& state) {
  const auto pts = grid_points(static_cast<int>(state.range(0)));
  const auto fn = test_rational().evaluator();
  std::vector<Complex> out(pts.size());
  for (auto _ : state) {
    kernels::serial::map_eval(fn, pts, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void bm_map_eval_parallel(benchmark::State& state) {
  const auto pts = grid_points(static_cast<int>(state.range(0)));
  const auto fn = test_rational().evaluator();
  std::vector<Complex> out(pts.size());
  for (auto _ : state) {
    kernels::map_eval(fn, pts, out, kernels::Mode::Parallel);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void bm_modulus_sum_serial(benchmark::State& state) {
  const auto pts = grid_points(static_cast<int>(state.range(0)));
  const std::vector<kernels::Evaluator> fs{
      test_rational().evaluator(),
      circdom::ComplexRational::monomial(Complex(1.0, 0.0), 2).evaluator()};
  std::vector<double> out(pts.size());
  for (auto _ : state) {
    kernels::serial::modulus_sum(fs, pts, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void bm_modulus_sum_parallel(benchmark::State& state) {
  const auto pts = grid_points(static_cast<int>(state.range(0)));
  const std::vector<kernels::Evaluator> fs{
      test_rational().evaluator(),
      circdom::ComplexRational::monomial(Complex(1.0, 0.0), 2).evaluator()};
  std::vector<double> out(pts.size());
  for (auto _ : state) {
    kernels::modulus_sum(fs, pts, out, kernels::Mode::Parallel);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void bm_fourier_bins_serial(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto samples = circle_samples(n);
  std::vector<Complex> bins(static_cast<std::size_t>(n / 2));
  for (auto _ : state) {
    kernels::serial::fourier_bins(samples, +1, bins);
    benchmark::DoNotOptimize(bins.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void bm_fourier_bins_parallel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto samples = circle_samples(n);
  std::vector<Complex> bins(static_cast<std::size_t>(n / 2));
  for (auto _ : state) {
    kernels::fourier_bins(samples, +1, bins, kernels::Mode::Parallel);
    benchmark::DoNotOptimize(bins.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

BENCHMARK(bm_map_eval_serial)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(bm_map_eval_parallel)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(bm_modulus_sum_serial)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(bm_modulus_sum_parallel)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(bm_fourier_bins_serial)->Arg(1 << 8)->Arg(1 << 10)->Arg(1 << 12);
BENCHMARK(bm_fourier_bins_parallel)->Arg(1 << 8)->Arg(1 << 10)->Arg(1 << 12);

}  // namespace

BENCHMARK_MAIN();
