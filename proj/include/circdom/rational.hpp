#pragma once

#include <span>
#include <utility>
#include <vector>

#include "circdom/geometry.hpp"
#include "circdom/kernels.hpp"
#include "circdom/types.hpp"

namespace circdom {

// Rational function in zeros/poles/scale form:
//   f(z) = scale * prod_k (z - zero_k) / prod_k (z - pole_k).
// Multiplicity is represented by repetition. The identically-zero function
// is the special value scale == 0 with empty zero and pole lists; every
// other representation requires a nonzero scale and zero/pole lists with no
// common point (within the cancellation tolerance).
class ComplexRational {
 public:
  ComplexRational() : scale_(1.0) {}  // the constant 1
  ComplexRational(std::vector<Complex> zeros, std::vector<Complex> poles,
                  Complex scale);

  static ComplexRational constant(Complex c);
  static ComplexRational zero_function() { return constant(Complex(0, 0)); }
  // Monomial (z - a)^k; negative k puts the factor in the poles.
  static ComplexRational monomial(Complex a, int k);

  const std::vector<Complex>& zeros() const { return zeros_; }
  const std::vector<Complex>& poles() const { return poles_; }
  Complex scale() const { return scale_; }
  bool is_zero() const { return scale_ == Complex(0, 0); }
  int degree() const;  // max(#zeros, #poles)

  // Throws EvalAtPole when z is within the cancellation tolerance of a pole.
  Complex operator()(Complex z) const;

  // f'(z)/f(z) = sum 1/(z - zero) - sum 1/(z - pole); exact.
  Complex log_derivative(Complex z) const;
  Complex derivative(Complex z) const { return (*this)(z)*log_derivative(z); }

  kernels::Evaluator evaluator() const;

  ComplexRational scaled(Complex c) const;
  ComplexRational conjugated() const;  //  z -> conj(f(conj z))
  ComplexRational inverse() const;     //  1/f; rejects the zero function

  // Multisets concatenate; zero/pole pairs within the cancellation
  // tolerance cancel (the surviving point keeps the zero-side value).
  static ComplexRational mul(const ComplexRational& a, const ComplexRational& b);
  // Coefficient-form addition re-factored by root finding. Throws
  // DegreeOverflow past max_degree.
  static ComplexRational add(const ComplexRational& a, const ComplexRational& b,
                             int max_degree = 64);
  static ComplexRational sub(const ComplexRational& a, const ComplexRational& b,
                             int max_degree = 64);

  // True when every pole is strictly inside a hole or outside the closed
  // outer disk, i.e. f is bounded holomorphic on the domain.
  bool in_hinf(const CircularDomain& domain) const;

  // Zeros lying strictly inside the domain, grouped into (zero, multiplicity).
  std::vector<std::pair<Complex, int>> zeros_in(const CircularDomain& domain) const;

 private:
  std::vector<Complex> zeros_;
  std::vector<Complex> poles_;
  Complex scale_;
};

// Dense-coefficient complex polynomial helpers (ascending order). These are
// the coefficient view behind ComplexRational::add.
namespace poly {
std::vector<Complex> from_roots(std::span<const Complex> roots, Complex scale);
std::vector<Complex> mul(std::span<const Complex> a, std::span<const Complex> b);
std::vector<Complex> add(std::span<const Complex> a, std::span<const Complex> b);
Complex eval(std::span<const Complex> coeffs, Complex z);
// Roots via the companion matrix, Newton-polished. Trailing (leading-order)
// coefficients below rel_trim * max|c| are trimmed first.
std::vector<Complex> roots(std::span<const Complex> coeffs,
                           double rel_trim = 1e-13);
}  // namespace poly

// Max modulus over boundary samples, M doubling until the relative change
// drops below rel_tol; by the maximum principle this approximates the sup
// norm over the domain for functions continuous up to the boundary.
double sup_norm(const kernels::Evaluator& f, const CircularDomain& domain,
                int initial_samples = 256, double rel_tol = tol::norm);

// Rational overload; throws PoleOnBoundary when a pole sits on a component
// circle (within the boundary tolerance).
double sup_norm(const ComplexRational& f, const CircularDomain& domain,
                int initial_samples = 256, double rel_tol = tol::norm);

// Max over samples of |conj(f(conj z)) - f(z)|, the real-symmetry defect.
double symmetry_defect(const kernels::Evaluator& f, const CircularDomain& domain,
                       int samples_per_circle = 128);

}  // namespace circdom
