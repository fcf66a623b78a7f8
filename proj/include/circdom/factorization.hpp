#pragma once

#include <vector>

#include "circdom/blaschke.hpp"
#include "circdom/cauchy.hpp"
#include "circdom/geometry.hpp"
#include "circdom/rational.hpp"
#include "circdom/series.hpp"
#include "circdom/types.hpp"

namespace circdom {

// sign * prod_j (z - center_j)^{exponent_j}, one term per hole.
struct MonomialProduct {
  std::vector<Complex> centers;
  std::vector<int> exponents;
  int sign = 1;

  Complex eval(Complex z) const;
  ComplexRational rational() const;
};

// One factor B_j * exp(h_j).  Its zeros, and the singularities of h_j,
// live in a single complementary component, so the factor is analytic
// and bounded on every other one.
struct AnalyticFactor {
  GeneralizedBlaschke blaschke;
  ComponentSeries log_part;

  Complex eval(Complex z) const;
  kernels::Evaluator evaluator() const;
};

struct Factorization {
  std::vector<AnalyticFactor> factors;  // one per component, outer first
  MonomialProduct monomials;
  double residual = 0.0;  // relative reconstruction error on the check grid

  Complex eval(Complex z) const;
  kernels::Evaluator evaluator() const;
};

struct LogResult {
  std::vector<int> exponents;  // winding of g about each hole
  CauchyParts parts;           // additive split of the resulting log
};

// Writes a zero-free g as prod_j (z - a_j)^{k_j} * exp(sum_j h_j).
// k_j is the winding of g about hole j; after dividing those windings
// out the log is single valued and splits additively.
LogResult log_nonvanishing(const ComplexRational& g, const CircularDomain& domain,
                           const DecomposeOptions& opts = {});

// f = prod_j B_j exp(h_j) * sign * prod(z - a_j)^{k_j} with each factor
// zero-free outside its own component's zero set.
Factorization multiplicative_factorize(const ComplexRational& f,
                                       const CircularDomain& domain,
                                       const DecomposeOptions& opts = {});

// Rebuilds the factorization so every factor commutes with conjugation:
// real series coefficients on self-paired components, mirrored data on
// swapped pairs, and a +-1 sign on the monomial part chosen so the
// product still reconstructs f.
Factorization symmetrize_factorization(const Factorization& fact,
                                       const ComplexRational& f,
                                       const CircularDomain& domain,
                                       const DecomposeOptions& opts = {});

// Max over the check grid of |fact(z) - f(z)|, relative to 1 + max|f|.
double factorization_residual(const Factorization& fact,
                              const kernels::Evaluator& f,
                              const CircularDomain& domain);

}  // namespace circdom
