#pragma once

#include <utility>
#include <vector>

#include "circdom/geometry.hpp"
#include "circdom/kernels.hpp"
#include "circdom/rational.hpp"
#include "circdom/types.hpp"

namespace circdom {

// Finite Blaschke product transplanted onto a circle |z - a| = r. Interior
// products (exterior = false) live on the open disk, exterior ones on the
// complement of the closed disk; both are unimodular on the circle itself.
// Zeros z_k map to unit-disk parameters w_k = (z_k-a)/r respectively
// r/(z_k-a), all required to satisfy |w_k| < 1.
struct GeneralizedBlaschke {
  Disk disk;
  bool exterior = false;
  std::vector<Complex> zeros;  // multiplicity by repetition, fixed order

  static GeneralizedBlaschke for_zeros(const Disk& disk, bool exterior,
                                       std::vector<Complex> zeros);

  Complex unit_parameter(Complex zero) const;
  Complex eval(Complex z) const;
  kernels::Evaluator evaluator() const;

  // The same product written as an explicit rational function of z. Interior
  // factors place the pole at the circle reflection a + r/conj(w) outside the
  // disk, exterior factors at a + r*conj(w) inside it, so multiplying an
  // H^inf function by the product never leaves the class.
  ComplexRational rational() const;
};

// Single unit factor in rational form; `zero` must be on the product's side
// of the circle. Used for building products and for zero-shift corrections.
ComplexRational blaschke_factor_rational(const Disk& disk, bool exterior,
                                         Complex zero);

// Component j = 0 gets an interior product on the outer disk, j >= 1 an
// exterior product on hole j.
GeneralizedBlaschke blaschke_for_component(const CircularDomain& domain, int j,
                                           std::vector<Complex> zeros);

struct BlaschkeCondition {
  double sum = 0.0;                   // sum of dist(z_k, boundary)
  std::vector<double> per_component;  // split by nearest component circle
  // True when the running sums look non-Cauchy: the last quarter of the
  // terms contributes more than half of what the previous quarter did.
  bool diverging_trend = false;
};

// Sum of boundary distances for a finite zero list (prefix of a possibly
// infinite sequence). Throws ZeroOutsideDomain for points not in the domain.
BlaschkeCondition blaschke_condition(const std::vector<Complex>& zeros,
                                     const CircularDomain& domain);

// Winding number (1/2pi i) times the integral of f'/f along the contour,
// counterclockwise. The rational path uses the exact logarithmic derivative;
// the sampled estimate must land within 0.1 of an integer, doubling the
// sample count until it does. Throws ZeroNearContour when min sampled |f|
// drops below tol::winding times the max, NonIntegerWinding past the cap.
int winding_number(const ComplexRational& f, const Contour& contour,
                   int initial_samples = 256);

// Black-box path: nearest-branch phase unwrapping of contour samples,
// doubling samples until every phase step is below pi/2.
int winding_number(const kernels::Evaluator& f, const Contour& contour,
                   int initial_samples = 256);

// Zeros of f inside the domain with multiplicities. Exact for rationals.
std::vector<std::pair<Complex, int>> locate_zeros(const ComplexRational& f,
                                                  const CircularDomain& domain);

// Black-box path via contour moments s_p = (1/2pi i) integral of z^p f'/f
// over the boundary cycle: Newton identities recover the monic polynomial
// with the zeros as roots, then each root is polished on f itself. Capped
// at max_zeros (the identities are ill-conditioned beyond ~12 zeros).
std::vector<std::pair<Complex, int>> locate_zeros(const kernels::Evaluator& f,
                                                  const CircularDomain& domain,
                                                  int max_zeros = 12);

// Assigns each zero to the component circle nearest to it (lowest index on
// ties). Result is indexed by component; zeros keep their input order.
std::vector<std::vector<Complex>> split_zeros(const std::vector<Complex>& zeros,
                                              const CircularDomain& domain);

}  // namespace circdom
