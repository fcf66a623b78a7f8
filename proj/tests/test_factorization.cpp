#include "circdom/factorization.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "circdom/blaschke.hpp"
#include "circdom/cauchy.hpp"
#include "circdom/errors.hpp"
#include "circdom/geometry.hpp"
#include "circdom/rational.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace circdom;
using circdom::testing::random_hinf_rational;
using circdom::testing::random_in_ring;

namespace {

// Exponent the factorization must produce at a hole, from the stored
// rational data: zeros minus poles of f strictly inside, plus one for each
// interior zero assigned to the hole's exterior factor (whose reflected
// pole inside the hole the exponent absorbs).
int hole_count_oracle(const ComplexRational& f, const CircularDomain& domain,
                      int hole) {
  int count = 0;
  std::vector<Complex> interior;
  for (Complex z : f.zeros()) {
    const Location loc = locate(domain, z);
    if (loc.tag == RegionTag::InHole && loc.component == hole) ++count;
    if (loc.tag == RegionTag::Interior) interior.push_back(z);
  }
  for (Complex p : f.poles()) {
    const Location loc = locate(domain, p);
    if (loc.tag == RegionTag::InHole && loc.component == hole) --count;
  }
  count += static_cast<int>(
      split_zeros(interior, domain)[static_cast<std::size_t>(hole)].size());
  return count;
}

double reconstruction_error(const Factorization& fact, const ComplexRational& f,
                            const CircularDomain& domain) {
  double err = 0.0;
  for (Complex z : polar_grid(domain, 16, 48, 0.0))
    err = std::max(err, std::abs(fact.eval(z) - f(z)));
  return err;
}

}  // namespace

TEST_CASE("monomial product evaluates and converts to rational form") {
  MonomialProduct mono;
  mono.centers = {Complex(0, 0), Complex(3, 0)};
  mono.exponents = {2, -1};
  mono.sign = -1;

  const Complex z(1.0, 1.0);
  const Complex want = -(z * z) / (z - 3.0);
  CHECK(std::abs(mono.eval(z) - want) < 1e-14);

  const ComplexRational r = mono.rational();
  CHECK(r.zeros().size() == 2);
  CHECK(r.poles().size() == 1);
  CHECK(std::abs(r(z) - want) < 1e-14);
}

TEST_CASE("identity map on the annulus factors into the hole monomial") {
  const CircularDomain domain = annulus(0.5, 2.0);
  const ComplexRational f = ComplexRational::monomial(Complex(0, 0), 1);

  const Factorization fact = multiplicative_factorize(f, domain);
  REQUIRE(fact.monomials.exponents.size() == 1);
  CHECK(fact.monomials.exponents[0] == 1);
  CHECK(fact.monomials.sign == 1);
  CHECK(fact.residual < 1e-10);

  // Both analytic factors are the constant 1: no zeros, flat log.
  for (const auto& factor : fact.factors) {
    CHECK(factor.blaschke.zeros.empty());
    for (Complex z : {Complex(1.2, 0.3), Complex(-0.9, 0.4), Complex(0, 1.7)})
      CHECK(std::abs(factor.eval(z) - 1.0) < 1e-10);
  }
}

TEST_CASE("outer-side interior zero goes to the interior Blaschke part") {
  const CircularDomain domain = annulus(0.5, 2.0);
  const ComplexRational f = ComplexRational::monomial(Complex(1.5, 0), 1);

  const Factorization fact = multiplicative_factorize(f, domain);
  CHECK(fact.monomials.exponents[0] == 0);
  REQUIRE(fact.factors[0].blaschke.zeros.size() == 1);
  CHECK(std::abs(fact.factors[0].blaschke.zeros[0] - Complex(1.5, 0)) < 1e-12);
  CHECK(fact.factors[1].blaschke.zeros.empty());
  CHECK(reconstruction_error(fact, f, domain) < 1e-8);
  CHECK(std::abs(fact.eval(Complex(1.5, 0))) < 1e-8);
}

TEST_CASE("hole-side interior zero rides the exterior factor plus monomial") {
  // The zero at 1 is nearer the hole circle, so it lands in the exterior
  // Blaschke factor; that factor's reflected pole inside the hole shifts
  // the winding there, which the monomial exponent absorbs.
  const CircularDomain domain = annulus(0.5, 2.0);
  const ComplexRational f = ComplexRational::monomial(Complex(1, 0), 1);

  const Factorization fact = multiplicative_factorize(f, domain);
  CHECK(fact.monomials.exponents[0] == 1);
  CHECK(fact.factors[0].blaschke.zeros.empty());
  REQUIRE(fact.factors[1].blaschke.zeros.size() == 1);
  CHECK(std::abs(fact.factors[1].blaschke.zeros[0] - Complex(1, 0)) < 1e-12);
  CHECK(reconstruction_error(fact, f, domain) < 1e-8);
  CHECK(std::abs(fact.eval(Complex(1, 0))) < 1e-8);
}

TEST_CASE("constants factor as themselves") {
  const CircularDomain domain = annulus(0.5, 2.0);
  const ComplexRational f = ComplexRational::constant(Complex(2.0, -1.0));
  const Factorization fact = multiplicative_factorize(f, domain);
  CHECK(fact.monomials.exponents[0] == 0);
  CHECK(std::abs(fact.eval(Complex(1.1, 0.2)) - Complex(2.0, -1.0)) < 1e-10);
}

TEST_CASE("winding exponents match the zero and pole count in each hole") {
  const CircularDomain domain = CircularDomain::validate(
      Disk{Complex(0, 0), 2.0},
      {Disk{Complex(-1, 0), 0.3}, Disk{Complex(1, 0), 0.3}});

  std::mt19937 rng(81);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Complex> zeros;
    std::vector<Complex> poles;
    // A zero or two per hole, one interior zero, one far pole.
    zeros.push_back(Complex(-1, 0) + random_in_ring(rng, Complex(0, 0), 0.0, 0.15));
    zeros.push_back(Complex(1, 0) + random_in_ring(rng, Complex(0, 0), 0.0, 0.15));
    if (trial % 2 == 0)
      zeros.push_back(Complex(1, 0) + random_in_ring(rng, Complex(0, 0), 0.0, 0.15));
    if (trial % 3 == 0)
      poles.push_back(Complex(-1, 0) + random_in_ring(rng, Complex(0, 0), 0.0, 0.1));
    zeros.push_back(random_in_ring(rng, Complex(0, 0.9), 0.0, 0.2));
    poles.push_back(random_in_ring(rng, Complex(0, 0), 5.0, 8.0));

    const ComplexRational f(zeros, poles, Complex(1.5, 0.5));
    const Factorization fact = multiplicative_factorize(f, domain);
    for (int hole = 1; hole <= 2; ++hole)
      CHECK(fact.monomials.exponents[static_cast<std::size_t>(hole) - 1] ==
            hole_count_oracle(f, domain, hole));
    CHECK(fact.residual < 1e-8);
  }
}

TEST_CASE("random rationals reconstruct from their factorizations") {
  const CircularDomain domain = CircularDomain::validate(
      Disk{Complex(0.3, -0.1), 2.0},
      {Disk{Complex(-0.5, 0.4), 0.35}, Disk{Complex(0.9, -0.6), 0.3}});

  std::mt19937 rng(407);
  for (int trial = 0; trial < 12; ++trial) {
    const ComplexRational f = random_hinf_rational(rng, domain, 4, 2);
    const Factorization fact = multiplicative_factorize(f, domain);

    const double scale = 1.0 + sup_norm(f, domain);
    CHECK(reconstruction_error(fact, f, domain) <= 1e-8 * scale);

    // Interior zeros all end up in some Blaschke part.
    std::size_t placed = 0;
    for (const auto& factor : fact.factors) placed += factor.blaschke.zeros.size();
    std::size_t interior = 0;
    for (Complex z : f.zeros())
      if (locate(domain, z).tag == RegionTag::Interior) ++interior;
    CHECK(placed == interior);
  }
}

TEST_CASE("each factor has winding zero around the other holes") {
  const CircularDomain domain = CircularDomain::validate(
      Disk{Complex(0, 0), 2.0},
      {Disk{Complex(-1, 0), 0.3}, Disk{Complex(1, 0), 0.3}});

  std::vector<Complex> zeros = {Complex(-1.05, 0.05), Complex(0.95, -0.04),
                                Complex(0.1, 0.8)};
  const ComplexRational f(zeros, {}, Complex(1, 0));
  const Factorization fact = multiplicative_factorize(f, domain);

  for (int j = 0; j < domain.connectivity(); ++j) {
    const auto factor = fact.factors[static_cast<std::size_t>(j)].evaluator();
    for (int hole = 1; hole < domain.connectivity(); ++hole) {
      if (hole == j) continue;
      const Contour contour = component_contour(domain, hole, 1e-3, 256);
      CHECK(winding_number(factor, contour) == 0);
    }
  }
  // The outer factor also has no net winding around any hole.
  const Contour outer_near_hole = component_contour(domain, 1, 1e-3, 256);
  CHECK(winding_number(fact.factors[0].evaluator(), outer_near_hole) == 0);
}

TEST_CASE("boundary zeros and boundary poles are rejected") {
  const CircularDomain domain = annulus(0.5, 2.0);
  const ComplexRational on_edge = ComplexRational::monomial(Complex(2, 0), 1);
  CHECK_THROWS_WITH_AS(multiplicative_factorize(on_edge, domain),
                       doctest::Contains("zero sits on the domain boundary"),
                       Error);
  const ComplexRational bad_pole({}, {Complex(0.5, 0)}, Complex(1, 0));
  CHECK_THROWS_AS(multiplicative_factorize(bad_pole, domain), Error);
  CHECK_THROWS_AS(multiplicative_factorize(ComplexRational::zero_function(), domain),
                  Error);
}

TEST_CASE("log of a zero-free function recovers exponents and additive parts") {
  const CircularDomain domain = annulus(0.5, 2.0);
  // g = 3 z^2: winding 2 about the hole, log remainder the constant log 3.
  const ComplexRational g = ComplexRational::monomial(Complex(0, 0), 2).scaled(3.0);
  const LogResult logs = log_nonvanishing(g, domain);
  REQUIRE(logs.exponents.size() == 1);
  CHECK(logs.exponents[0] == 2);
  for (Complex z : {Complex(1, 0), Complex(0, -1.2), Complex(-0.8, 0.7)}) {
    const Complex lhs = std::exp(logs.parts.eval(z)) * std::pow(z, 2.0);
    CHECK(std::abs(lhs - g(z)) < 1e-9);
  }
}

TEST_CASE("log split matches a direct series oracle on the annulus") {
  // g = exp-free rational (z - 4)/(z - 0.1): log g = log(z-4) - log(z-0.1).
  // On 0.5 < |z| < 2 the first term is an outer-type function and the
  // second splits as log z plus a hole-type function:
  //   log(z - 0.1) = log z + log(1 - 0.1/z).
  // So the winding about the hole is -1 and the parts are explicit series.
  const CircularDomain domain = annulus(0.5, 2.0);
  const ComplexRational g({Complex(4, 0)}, {Complex(0.1, 0)}, Complex(1, 0));
  const LogResult logs = log_nonvanishing(g, domain);
  REQUIRE(logs.exponents.size() == 1);
  CHECK(logs.exponents[0] == -1);

  // Hole part: -log(1 - 0.1/z) = sum_{p>=1} (0.1)^p / (p z^p); in the
  // (r/z)^p basis with r = 0.5 the coefficient is (0.1)^p / (p 0.5^p).
  const auto& hole = logs.parts.parts[1];
  REQUIRE(hole.coeffs.size() >= 4);
  for (int p = 1; p < 4; ++p) {
    const double want = std::pow(0.1, p) / (p * std::pow(0.5, p));
    CHECK(std::abs(hole.coeffs[static_cast<std::size_t>(p)] - want) < 1e-12);
  }

  // Outer part: log(z - 4) + 2 pi i m for some branch integer m.
  const auto& outer = logs.parts.parts[0];
  const Complex z(1.3, -0.4);
  const Complex diff = outer.eval(z) - std::log(z - 4.0);
  CHECK(std::abs(std::exp(outer.eval(z)) - (z - 4.0)) < 1e-9);
  CHECK(std::abs(diff.real()) < 1e-9);
  CHECK(std::abs(std::remainder(diff.imag(), kTwoPi)) < 1e-9);
}

TEST_CASE("factorizing a function that vanishes on a contour fails cleanly") {
  const CircularDomain domain = annulus(0.5, 2.0);
  // Zero just inside the hole offset shell hits the sampling contour.
  const ComplexRational f = ComplexRational::monomial(Complex(0.5005, 0), 1);
  CHECK_THROWS_AS(multiplicative_factorize(f, domain), Error);
}

TEST_CASE("symmetrization keeps a symmetric factorization and pins the data") {
  const CircularDomain domain = annulus(0.5, 2.0);
  std::vector<Complex> zeros = {Complex(1.0, 0.5), Complex(1.0, -0.5),
                                Complex(-1.2, 0.0)};
  const ComplexRational f(zeros, {}, Complex(2.0, 0.0));
  const Factorization fact = multiplicative_factorize(f, domain);
  const Factorization sym = symmetrize_factorization(fact, f, domain);

  CHECK(sym.residual < 1e-8);
  CHECK(sym.monomials.sign == 1);
  for (const auto& factor : sym.factors)
    for (const Complex& c : factor.log_part.coeffs) {
      // Self-paired components carry real series coefficients.
      CHECK(std::abs(c.imag()) < 1e-12);
    }

  // Zeros are conjugation closed: the real zero stays pinned to the axis.
  bool found_real = false;
  for (const auto& factor : sym.factors)
    for (const Complex& z : factor.blaschke.zeros)
      if (std::abs(z - Complex(-1.2, 0)) < 1e-12) {
        found_real = true;
        CHECK(z.imag() == 0.0);
      }
  CHECK(found_real);

  // Conjugation symmetry of the reconstruction is exact on the nose.
  for (Complex z : {Complex(1.1, 0.4), Complex(-0.7, 0.9), Complex(0.0, -1.5)})
    CHECK(std::abs(std::conj(sym.eval(std::conj(z))) - sym.eval(z)) < 1e-10);
}

TEST_CASE("symmetrization rejects asymmetric functions and domains") {
  const CircularDomain domain = annulus(0.5, 2.0);
  const ComplexRational f({Complex(1.0, 0.5)}, {}, Complex(1, 0));
  const Factorization fact = multiplicative_factorize(f, domain);
  CHECK_THROWS_WITH_AS(symmetrize_factorization(fact, f, domain),
                       doctest::Contains("NotSymmetric"), Error);

  const CircularDomain tilted = CircularDomain::validate(
      Disk{Complex(0, 0), 2.0}, {Disk{Complex(0.5, 0.5), 0.2}});
  const ComplexRational g = ComplexRational::constant(Complex(1, 0));
  const Factorization gfact = multiplicative_factorize(g, tilted);
  CHECK_THROWS_WITH_AS(symmetrize_factorization(gfact, g, tilted),
                       doctest::Contains("NotSymmetric"), Error);
}

TEST_CASE("negative real functions force the negative monomial sign") {
  // f(z) = -z is real symmetric and zero-free on the annulus. Its log
  // picks up the phase pi, which symmetrization strips from the series,
  // so reconstructing f needs the -1 sign on the monomial part.
  const CircularDomain domain = annulus(0.5, 2.0);
  const ComplexRational f = ComplexRational::monomial(Complex(0, 0), 1).scaled(-1.0);

  const Factorization fact = multiplicative_factorize(f, domain);
  CHECK(fact.monomials.exponents[0] == 1);

  const Factorization sym = symmetrize_factorization(fact, f, domain);
  CHECK(sym.monomials.sign == -1);
  CHECK(sym.residual < 1e-8);
  for (Complex z : {Complex(1, 0), Complex(0, 1.3), Complex(-0.8, -0.2)})
    CHECK(std::abs(sym.eval(z) + z) < 1e-9);
}

TEST_CASE("symmetrization mirrors data across conjugate hole pairs") {
  const CircularDomain domain = CircularDomain::validate(
      Disk{Complex(0, 0), 2.0},
      {Disk{Complex(0, 0.8), 0.25}, Disk{Complex(0, -0.8), 0.25}});

  // Conjugation-symmetric f with a zero near each hole and one in each hole.
  std::vector<Complex> zeros = {Complex(0.3, 0.8), Complex(0.3, -0.8),
                                Complex(0, 0.85), Complex(0, -0.85)};
  const ComplexRational f(zeros, {}, Complex(1.0, 0.0));
  const Factorization fact = multiplicative_factorize(f, domain);
  const Factorization sym = symmetrize_factorization(fact, f, domain);

  CHECK(sym.residual < 1e-8);
  CHECK(sym.monomials.exponents[0] == sym.monomials.exponents[1]);

  const auto& h1 = sym.factors[1].log_part.coeffs;
  const auto& h2 = sym.factors[2].log_part.coeffs;
  REQUIRE(h1.size() == h2.size());
  for (std::size_t k = 0; k < h1.size(); ++k)
    CHECK(std::abs(h1[k] - std::conj(h2[k])) < 1e-12);

  const auto& z1 = sym.factors[1].blaschke.zeros;
  const auto& z2 = sym.factors[2].blaschke.zeros;
  REQUIRE(z1.size() == z2.size());
  for (std::size_t k = 0; k < z1.size(); ++k)
    CHECK(std::abs(z1[k] - std::conj(z2[k])) < 1e-12);

  for (Complex z : {Complex(1.1, 0.4), Complex(-0.6, 0.9)})
    CHECK(std::abs(std::conj(sym.eval(std::conj(z))) - sym.eval(z)) < 1e-10);
}

TEST_CASE("symmetrizing twice changes nothing") {
  const CircularDomain domain = annulus(0.5, 2.0);
  const ComplexRational f({Complex(1.0, 0.5), Complex(1.0, -0.5)}, {},
                          Complex(1.5, 0.0));
  const Factorization once =
      symmetrize_factorization(multiplicative_factorize(f, domain), f, domain);
  const Factorization twice = symmetrize_factorization(once, f, domain);

  CHECK(once.monomials.sign == twice.monomials.sign);
  for (std::size_t j = 0; j < once.factors.size(); ++j) {
    const auto& a = once.factors[j].log_part.coeffs;
    const auto& b = twice.factors[j].log_part.coeffs;
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(std::abs(a[k] - b[k]) < 1e-14);
  }
}
