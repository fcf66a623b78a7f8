#pragma once

#include <functional>
#include <span>
#include <vector>

#include "circdom/types.hpp"

namespace circdom::kernels {

using Evaluator = std::function<Complex(Complex)>;

// Execution policy for the data-parallel loops. Auto honors the
// CIRCDOM_THREADS environment variable (<= 1 selects the serial path).
// Every kernel computes each output element independently, so results are
// bitwise identical across modes and thread counts.
enum class Mode { Serial, Parallel, Auto };

// Thread budget: min(omp max threads, CIRCDOM_THREADS if set). Always >= 1.
int thread_budget();
bool use_parallel(Mode mode);

// out[i] = fn(pts[i])
void map_eval(const Evaluator& fn, std::span<const Complex> pts,
              std::span<Complex> out, Mode mode = Mode::Auto);

std::vector<Complex> map_eval(const Evaluator& fn,
                              std::span<const Complex> pts,
                              Mode mode = Mode::Auto);

// out[i] = sum_f |fs[f](pts[i])| -- the corona modulus-sum surface.
void modulus_sum(const std::vector<Evaluator>& fs,
                 std::span<const Complex> pts, std::span<double> out,
                 Mode mode = Mode::Auto);

// Normalized Fourier reads of equispaced circle samples
// (theta_m = 2 pi m / M):
//   bins[k] = (1/M) sum_m samples[m] * exp(-2 pi i * sign * k * m / M)
// sign = +1 gives the analytic (Taylor) reads, sign = -1 the principal-part
// reads. Parallel over bins; per-bin summation order is fixed.
void fourier_bins(std::span<const Complex> samples, int sign,
                  std::span<Complex> bins, Mode mode = Mode::Auto);

std::vector<Complex> fourier_bins(std::span<const Complex> samples, int sign,
                                  int nbins, Mode mode = Mode::Auto);

// Derivative with respect to theta of the trigonometric interpolant of
// equispaced circle samples (full-spectrum differentiation; the Nyquist
// mode is dropped). Used for logarithmic-derivative integrands of
// black-box functions.
std::vector<Complex> spectral_theta_derivative(std::span<const Complex> samples,
                                               Mode mode = Mode::Auto);

// Serial reference implementations. The dispatching kernels above fall back
// to these; tests compare both paths and the bench target times them.
namespace serial {
void map_eval(const Evaluator& fn, std::span<const Complex> pts,
              std::span<Complex> out);
void modulus_sum(const std::vector<Evaluator>& fs,
                 std::span<const Complex> pts, std::span<double> out);
void fourier_bins(std::span<const Complex> samples, int sign,
                  std::span<Complex> bins);
}  // namespace serial

}  // namespace circdom::kernels
