#pragma once

#include <complex>
#include <limits>

namespace circdom {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Library-wide default tolerances. Norm-like quantities are relative
// unless the name says otherwise.
namespace tol {
// OnBoundary classification, relative to the outer radius.
inline constexpr double boundary = 1e-12;
// Zero/pole cancellation pairing (absolute on coordinates).
inline constexpr double cancel = 1e-9;
// Series truncation: accepted when |c_N| / max|c_k| drops below this.
inline constexpr double tail = 1e-12;
// Sup-norm sampling convergence (relative change under M doubling).
inline constexpr double norm = 1e-10;
// Zero-near-contour guard, relative to the local sup of |f| on the contour.
inline constexpr double winding = 1e-6;
// Factorization reconstruction residual, relative.
inline constexpr double factor = 1e-8;
// Real-symmetry defect, relative.
inline constexpr double symmetry = 1e-9;
// Corona certification floor and Bezout residual bound.
inline constexpr double delta_min = 1e-6;
inline constexpr double bezout = 1e-6;
}  // namespace tol

inline bool is_finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

}  // namespace circdom
