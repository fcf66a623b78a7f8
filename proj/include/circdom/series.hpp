#pragma once

#include <vector>

#include "circdom/geometry.hpp"
#include "circdom/kernels.hpp"
#include "circdom/types.hpp"

namespace circdom {

enum class BasisKind {
  OuterPower,  // ((z - a0) / r0)^k, k >= 0
  HolePower,   // (r_j / (z - a_j))^k, k >= 1; coeffs[0] is structurally 0
};

// Truncated expansion of one additive piece of a Cauchy decomposition.
// OuterPower pieces are analytic on the open outer disk; HolePower pieces
// are analytic outside the closed hole and vanish at infinity.
struct ComponentSeries {
  BasisKind kind = BasisKind::OuterPower;
  int component = 0;
  Disk disk;
  std::vector<Complex> coeffs;

  Complex eval(Complex z) const;
  kernels::Evaluator evaluator() const;

  // max |c_k| over the last `window` coefficients divided by max |c_k|
  // overall; 0 for all-zero series. Convergence monitor for truncation.
  double tail_ratio(int window = 4) const;

  ComponentSeries conjugated_onto(const Disk& image_disk, int image_component) const;
};

// f = sum of parts, one per boundary component, parts[j].component == j.
struct CauchyParts {
  std::vector<ComponentSeries> parts;

  Complex eval(Complex z) const;
  kernels::Evaluator evaluator() const;
};

// Samples of a function on every component contour at a common offset and
// sample count. samples[j][m] = f(contour_j(theta_m)), theta_m = 2 pi m / M.
struct BoundarySamples {
  double offset = 0.0;
  int count = 0;
  std::vector<std::vector<Complex>> samples;
};

BoundarySamples sample_boundary(const kernels::Evaluator& f,
                                const CircularDomain& domain, double offset,
                                int count);

}  // namespace circdom
