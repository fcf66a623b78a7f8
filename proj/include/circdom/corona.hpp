#pragma once

#include <cstdint>
#include <vector>

#include "circdom/factorization.hpp"
#include "circdom/geometry.hpp"
#include "circdom/rational.hpp"
#include "circdom/series.hpp"
#include "circdom/types.hpp"

namespace circdom {

struct GridSpec {
  int radial = 96;
  int angular = 256;
};

struct LowerBound {
  double value = 0.0;
  Complex argmin;
  GridSpec grid;
};

// Upper estimate of inf over the closed domain of sum_i |f_i(z)|: polar
// grid scan followed by simplex descent from the smallest cells. The
// objective is not harmonic, so interior minima are real and a boundary
// scan alone would not do.
LowerBound lower_bound(const std::vector<ComplexRational>& fs,
                       const CircularDomain& domain, const GridSpec& grid = {});

struct BezoutOptions {
  int max_basis = 512;      // largest per-component series order tried
  double ridge = 1e-12;     // least-squares regularization
};

struct UnimodularCertificate {
  double delta = 0.0;            // lower_bound of the inputs
  std::vector<CauchyParts> bezout;  // x_i with sum_i x_i f_i = 1
  double residual = 0.0;         // max |sum x_i f_i - 1| on the check grids
  int basis_size = 0;            // series order N actually used
  int collocation_samples = 0;   // boundary samples per circle in the solve
  std::vector<double> norms;     // sup of |x_i| over the fine boundary grid
};

// Solves the Bezout equation sum x_i f_i = 1 by collocation over the
// component power bases, growing the order until the residual on finer
// boundary and interior grids drops below tol::bezout. Throws
// NotUnimodular when the lower bound is at or below tol::delta_min and
// IllConditioned when the basis cap is reached first.
UnimodularCertificate bezout_solve(const std::vector<ComplexRational>& fs,
                                   const CircularDomain& domain,
                                   const BezoutOptions& opts = {});

// Replaces each x_i by (x_i(z) + conj(x_i(conj z)))/2 on coefficients and
// re-verifies the residual. Requires the domain and every f_i symmetric.
UnimodularCertificate symmetrize_bezout(const std::vector<ComplexRational>& fs,
                                        const UnimodularCertificate& cert,
                                        const CircularDomain& domain);

// One simply connected piece of the sphere: the open disk itself, or the
// complement of its closure (which contains infinity).
struct Region {
  Disk disk;
  bool inside = true;

  bool contains(Complex z) const;
  // Distance from z to the region's boundary circle.
  double boundary_distance(Complex z) const;
};

struct FiberIntersection {
  // Zeros of the second function on the first region's boundary circle at
  // which the first function also degenerates, and vice versa.
  std::vector<Complex> on_first_boundary;
  std::vector<Complex> on_second_boundary;
  // Common zeros in the open intersection of the two regions.
  std::vector<Complex> common;
};

// Where the zero sets of f1 (analytic on r1) and f2 (analytic on r2) meet,
// for regions whose removed closed disks are disjoint. Finite by
// construction in the rational class. Throws IdenticallyZero for zero
// inputs and HoleOverlap when the removed disks are not disjoint.
FiberIntersection fiber_intersection(const ComplexRational& f1, const Region& r1,
                                     const ComplexRational& f2, const Region& r2);

struct PairShift {
  Complex from;
  Complex to;
  double change;  // measured sup-norm change of g on the region
};

struct PairPerturbation {
  ComplexRational f;
  ComplexRational g;
  std::vector<PairShift> shifts;
  double pair_min = 0.0;  // min of |f|+|g| over the probe set afterwards
};

// Separates near-common zeros of f and g inside one simply connected
// region by shifting g's zeros away from their nearest co-zeros, each
// shift charged against the budget eps/(4 * #shifts). f is returned
// untouched.
PairPerturbation perturb_pair_simply_connected(const ComplexRational& f,
                                               const ComplexRational& g,
                                               const Region& region, double eps,
                                               std::uint64_t seed = 0);

struct CrossShift {
  int f_component;  // component of the stationary zero's function
  int g_component;  // component of the shifted function
  Complex from;
  Complex to;
  double change;      // measured sup-norm change of the shifted function
  double min_before;  // pair min over probes before and after the shift
  double min_after;
};

struct CrossResult {
  std::vector<ComplexRational> fs;
  std::vector<ComplexRational> gs;
  std::vector<CrossShift> log;
  // Recorded pair minima, indexed by ordered pair (j, k), j != k, in
  // lexicographic order. Later shifts must keep each above half its
  // recorded value.
  std::vector<double> margins;
};

// For every ordered pair j != k separates the zeros of fs[j] from those of
// gs[k] on the intersection of their components' regions, with margin
// bookkeeping so earlier pairs stay separated.
CrossResult cross_perturb(const std::vector<ComplexRational>& fs,
                          const std::vector<ComplexRational>& gs,
                          const CircularDomain& domain, double eps,
                          std::uint64_t seed = 0);

struct ZeroShift {
  int component;
  Complex from;
  Complex to;
  double change;  // measured sup-norm change of the perturbed function
};

struct PerturbationResult {
  ComplexRational f;
  ComplexRational g;
  double distance = 0.0;   // sup |f_in - f| + sup |g_in - g| on the boundary
  double delta_out = 0.0;  // lower_bound of the output pair
  std::vector<ZeroShift> shifts;
  std::uint64_t seed = 0;
  UnimodularCertificate certificate;
};

struct PerturbOptions {
  double epsilon = 0.1;
  bool symmetric = false;
  std::uint64_t seed = 0;
  BezoutOptions bezout;
};

// Moves (f, g) to a unimodular pair within epsilon in the sup norm: both
// functions are factorized per component, near-common zeros of the factor
// pairs are separated (same component first, then all cross pairs), and
// the shifts are assembled back into exact rational perturbations of g.
// On a tight budget the whole plan is retried with halved shift scales up
// to 8 times. In symmetric mode all shifts come in conjugate pairs and
// the certificate is symmetrized.
PerturbationResult approximate_by_unimodular(const ComplexRational& f,
                                             const ComplexRational& g,
                                             const CircularDomain& domain,
                                             const PerturbOptions& opts = {});

}  // namespace circdom
