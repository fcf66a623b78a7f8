#pragma once

#include <functional>
#include <vector>

#include "circdom/geometry.hpp"
#include "circdom/kernels.hpp"
#include "circdom/rational.hpp"
#include "circdom/series.hpp"
#include "circdom/types.hpp"

namespace circdom {

struct DecomposeOptions {
  double offset = 1e-3;    // relative contour offset into the domain
  int initial_samples = 256;
  int max_coeffs = 2048;   // retained coefficients per component
  double tail_tol = tol::tail;
  int tail_window = 4;
};

// Produces M counterclockwise samples of the target function on the offset
// contour of the given component. Lets callers decompose functions that have
// no single-valued pointwise form (per-contour unwrapped logarithms); the
// adaptive loop re-invokes it as the sample count doubles.
using ComponentSampler = std::function<std::vector<Complex>(int component, int count)>;

// Additive splitting f = sum_j f_j across boundary components: f_0 extends
// analytically to the full outer disk, f_j (j >= 1) is analytic outside
// hole j and vanishes at infinity. Coefficients are Fourier reads on offset
// contours, sample counts doubling until the coefficient tail falls below
// tail_tol relative to the overall sample scale. Throws TruncationFailure
// when the cap is hit first and NonFiniteSample on inf/nan samples.
CauchyParts cauchy_decompose(const ComponentSampler& sampler,
                             const CircularDomain& domain,
                             const DecomposeOptions& opts = {});

CauchyParts cauchy_decompose(const kernels::Evaluator& f,
                             const CircularDomain& domain,
                             const DecomposeOptions& opts = {});

// Rational path; rejects functions with a pole in the closed domain
// (PoleInDomain) or on a sampling contour (PoleOnContour).
CauchyParts cauchy_decompose(const ComplexRational& f,
                             const CircularDomain& domain,
                             const DecomposeOptions& opts = {});

// Max of |f(z) - sum_j f_j(z)| over component-circle samples, divided by
// max(1, max |f| over the same samples).
double decompose_residual(const CauchyParts& parts, const kernels::Evaluator& f,
                          const CircularDomain& domain, int samples = 1024);

struct BoundedDecomposition {
  CauchyParts parts;
  // Max of Re f_j over boundary samples, per component. Re f_j is harmonic
  // off hole j, so this witnesses an upper bound for Re f_j on the domain.
  std::vector<double> max_real;
};

// Decomposition from fixed precomputed samples (no resampling available, so
// the tail check either passes at count/2 coefficients or throws
// TruncationFailure). Intended for targets with no pointwise form, like
// per-contour unwrapped logarithms, where Re log |g| <= log ||g|| transfers
// to the parts.
BoundedDecomposition decompose_bounded_above(const BoundarySamples& samples,
                                             const CircularDomain& domain,
                                             const DecomposeOptions& opts = {});

}  // namespace circdom
