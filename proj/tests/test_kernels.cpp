#include "circdom/kernels.hpp"

#include <random>
#include <vector>

#include "circdom/types.hpp"
#include "doctest.h"

using namespace circdom;

namespace {

std::vector<Complex> random_samples(int m, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Complex> s(static_cast<size_t>(m));
  for (auto& v : s) v = Complex(u(rng), u(rng));
  return s;
}

}  // namespace

TEST_CASE("fourier bins recover trig-polynomial coefficients") {
  const int m = 32;
  std::vector<Complex> s(m);
  const Complex c0(3, 0), c1(2, 0), c3(1, -2), d2(0.5, 0);
  for (int i = 0; i < m; ++i) {
    const double th = kTwoPi * i / m;
    s[static_cast<size_t>(i)] = c0 + c1 * std::polar(1.0, th) +
                                c3 * std::polar(1.0, 3 * th) +
                                d2 * std::polar(1.0, -2 * th);
  }
  const auto plus = kernels::fourier_bins(s, +1, 8);
  CHECK(std::abs(plus[0] - c0) < 1e-13);
  CHECK(std::abs(plus[1] - c1) < 1e-13);
  CHECK(std::abs(plus[2]) < 1e-13);
  CHECK(std::abs(plus[3] - c3) < 1e-13);

  const auto minus = kernels::fourier_bins(s, -1, 8);
  CHECK(std::abs(minus[0] - c0) < 1e-13);
  CHECK(std::abs(minus[2] - d2) < 1e-13);
  CHECK(std::abs(minus[1]) < 1e-13);
}

TEST_CASE("serial and parallel kernels agree bitwise") {
  const auto s = random_samples(512, 99);

  std::vector<Complex> bins_serial(256), bins_par(256);
  kernels::serial::fourier_bins(s, +1, bins_serial);
  kernels::fourier_bins(s, +1, bins_par, kernels::Mode::Parallel);
  for (size_t k = 0; k < bins_serial.size(); ++k) {
    CHECK(bins_serial[k].real() == bins_par[k].real());
    CHECK(bins_serial[k].imag() == bins_par[k].imag());
  }

  const kernels::Evaluator f = [](Complex z) { return z * z - 1.0 / (z + 2.5); };
  std::vector<Complex> out_serial(s.size()), out_par(s.size());
  kernels::serial::map_eval(f, s, out_serial);
  kernels::map_eval(f, s, out_par, kernels::Mode::Parallel);
  for (size_t i = 0; i < s.size(); ++i) {
    CHECK(out_serial[i].real() == out_par[i].real());
    CHECK(out_serial[i].imag() == out_par[i].imag());
  }

  const std::vector<kernels::Evaluator> fs = {
      f, [](Complex z) { return z + 1.0; }};
  std::vector<double> ms_serial(s.size()), ms_par(s.size());
  kernels::serial::modulus_sum(fs, s, ms_serial);
  kernels::modulus_sum(fs, s, ms_par, kernels::Mode::Parallel);
  for (size_t i = 0; i < s.size(); ++i) CHECK(ms_serial[i] == ms_par[i]);
}

TEST_CASE("modulus sum matches direct evaluation") {
  const auto s = random_samples(40, 4);
  const std::vector<kernels::Evaluator> fs = {
      [](Complex z) { return z - 1.0; }, [](Complex z) { return z + 1.0; }};
  std::vector<double> out(s.size());
  kernels::modulus_sum(fs, s, out);
  for (size_t i = 0; i < s.size(); ++i)
    CHECK(out[i] == doctest::Approx(std::abs(s[i] - 1.0) + std::abs(s[i] + 1.0)));
}

TEST_CASE("spectral derivative is exact on trigonometric modes") {
  const int m = 32;
  SUBCASE("single analytic mode") {
    std::vector<Complex> s(m);
    for (int i = 0; i < m; ++i)
      s[static_cast<size_t>(i)] = std::polar(1.0, 3 * kTwoPi * i / m);
    const auto d = kernels::spectral_theta_derivative(s);
    for (int i = 0; i < m; ++i) {
      const Complex want = Complex(0, 3) * std::polar(1.0, 3 * kTwoPi * i / m);
      CHECK(std::abs(d[static_cast<size_t>(i)] - want) < 1e-12);
    }
  }
  SUBCASE("real cosine") {
    std::vector<Complex> s(m);
    for (int i = 0; i < m; ++i)
      s[static_cast<size_t>(i)] = std::cos(2 * kTwoPi * i / m);
    const auto d = kernels::spectral_theta_derivative(s);
    for (int i = 0; i < m; ++i)
      CHECK(std::abs(d[static_cast<size_t>(i)] -
                     Complex(-2 * std::sin(2 * kTwoPi * i / m), 0)) < 1e-12);
  }
}

TEST_CASE("thread budget is at least one") {
  CHECK(kernels::thread_budget() >= 1);
}
