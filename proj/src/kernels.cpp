#include "circdom/kernels.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace circdom::kernels {

int thread_budget() {
#ifdef _OPENMP
  int budget = omp_get_max_threads();
#else
  int budget = 1;
#endif
  if (const char* env = std::getenv("CIRCDOM_THREADS")) {
    try {
      const int cap = std::stoi(env);
      if (cap >= 1 && cap < budget) budget = cap;
      if (cap >= 1 && budget < 1) budget = cap;
    } catch (...) {
      // Unparsable value: keep the OpenMP default.
    }
  }
  return budget < 1 ? 1 : budget;
}

bool use_parallel(Mode mode) {
#ifndef _OPENMP
  (void)mode;
  return false;
#else
  switch (mode) {
    case Mode::Serial:
      return false;
    case Mode::Parallel:
      return true;
    case Mode::Auto:
      return thread_budget() > 1;
  }
  return false;
#endif
}

namespace serial {

void map_eval(const Evaluator& fn, std::span<const Complex> pts,
              std::span<Complex> out) {
  for (size_t i = 0; i < pts.size(); ++i) out[i] = fn(pts[i]);
}

void modulus_sum(const std::vector<Evaluator>& fs,
                 std::span<const Complex> pts, std::span<double> out) {
  for (size_t i = 0; i < pts.size(); ++i) {
    double s = 0.0;
    for (const Evaluator& f : fs) s += std::abs(f(pts[i]));
    out[i] = s;
  }
}

void fourier_bins(std::span<const Complex> samples, int sign,
                  std::span<Complex> bins) {
  const size_t m = samples.size();
  // Shared root table; indexing by (k*i) mod m keeps each bin's sum exact
  // regardless of execution order across bins.
  std::vector<Complex> roots(m);
  for (size_t i = 0; i < m; ++i)
    roots[i] = std::polar(1.0, -sign * kTwoPi * double(i) / double(m));
  for (size_t k = 0; k < bins.size(); ++k) {
    Complex acc(0, 0);
    for (size_t i = 0; i < m; ++i) acc += samples[i] * roots[(k * i) % m];
    bins[k] = acc / double(m);
  }
}

}  // namespace serial

void map_eval(const Evaluator& fn, std::span<const Complex> pts,
              std::span<Complex> out, Mode mode) {
  if (!use_parallel(mode) || pts.size() < 64) {
    serial::map_eval(fn, pts, out);
    return;
  }
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(thread_budget())
  for (long i = 0; i < static_cast<long>(pts.size()); ++i)
    out[static_cast<size_t>(i)] = fn(pts[static_cast<size_t>(i)]);
#endif
}

std::vector<Complex> map_eval(const Evaluator& fn,
                              std::span<const Complex> pts, Mode mode) {
  std::vector<Complex> out(pts.size());
  map_eval(fn, pts, out, mode);
  return out;
}

void modulus_sum(const std::vector<Evaluator>& fs,
                 std::span<const Complex> pts, std::span<double> out,
                 Mode mode) {
  if (!use_parallel(mode) || pts.size() < 64) {
    serial::modulus_sum(fs, pts, out);
    return;
  }
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(thread_budget())
  for (long i = 0; i < static_cast<long>(pts.size()); ++i) {
    double s = 0.0;
    for (const Evaluator& f : fs) s += std::abs(f(pts[static_cast<size_t>(i)]));
    out[static_cast<size_t>(i)] = s;
  }
#endif
}

void fourier_bins(std::span<const Complex> samples, int sign,
                  std::span<Complex> bins, Mode mode) {
  if (!use_parallel(mode) || bins.size() < 16) {
    serial::fourier_bins(samples, sign, bins);
    return;
  }
#ifdef _OPENMP
  const size_t m = samples.size();
  std::vector<Complex> roots(m);
  for (size_t i = 0; i < m; ++i)
    roots[i] = std::polar(1.0, -sign * kTwoPi * double(i) / double(m));
#pragma omp parallel for schedule(static) num_threads(thread_budget())
  for (long k = 0; k < static_cast<long>(bins.size()); ++k) {
    Complex acc(0, 0);
    for (size_t i = 0; i < m; ++i)
      acc += samples[i] * roots[(static_cast<size_t>(k) * i) % m];
    bins[static_cast<size_t>(k)] = acc / double(m);
  }
#endif
}

std::vector<Complex> fourier_bins(std::span<const Complex> samples, int sign,
                                  int nbins, Mode mode) {
  std::vector<Complex> bins(static_cast<size_t>(nbins));
  fourier_bins(samples, sign, bins, mode);
  return bins;
}

std::vector<Complex> spectral_theta_derivative(std::span<const Complex> samples,
                                               Mode mode) {
  const int m = static_cast<int>(samples.size());
  std::vector<Complex> spectrum(samples.size());
  fourier_bins(samples, +1, spectrum, mode);
  // Signed frequencies: bin k holds mode k for k < m/2, mode k - m above.
  for (int k = 0; k < m; ++k) {
    int freq = (k <= m / 2) ? k : k - m;
    if (2 * k == m) freq = 0;  // drop the Nyquist mode
    spectrum[static_cast<size_t>(k)] *= Complex(0.0, double(freq));
  }
  // Synthesize back onto the sample angles.
  std::vector<Complex> out(samples.size());
  std::vector<Complex> roots(samples.size());
  for (int i = 0; i < m; ++i)
    roots[static_cast<size_t>(i)] = std::polar(1.0, kTwoPi * double(i) / m);
  auto synth = [&](long i) {
    Complex acc(0, 0);
    for (int k = 0; k < m; ++k)
      acc += spectrum[static_cast<size_t>(k)] *
             roots[(static_cast<size_t>(i) * static_cast<size_t>(k)) %
                   static_cast<size_t>(m)];
    out[static_cast<size_t>(i)] = acc;
  };
  if (use_parallel(mode) && m >= 64) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(thread_budget())
    for (long i = 0; i < m; ++i) synth(i);
#endif
  } else {
    for (long i = 0; i < m; ++i) synth(i);
  }
  return out;
}

}  // namespace circdom::kernels
