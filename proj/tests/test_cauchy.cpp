#include "circdom/cauchy.hpp"

#include <random>

#include "circdom/errors.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace circdom;

namespace {

// Principal part of rational f at its poles inside hole j, expanded in the
// normalized hole basis (r/(z-a))^q. Independent oracle: exact residues for
// simple poles, the explicit two-term expansion for double poles.
//   res/(z-p)      -> coeff_q = res * (p-a)^(q-1) / r^q
//   c/(z-p)^2      -> coeff_q = c * (q-1) * (p-a)^(q-2) / r^q
std::vector<Complex> principal_part_coeffs(const ComplexRational& f,
                                           const Disk& hole, int nterms) {
  std::vector<Complex> coeffs(static_cast<size_t>(nterms), Complex(0, 0));
  std::vector<std::pair<Complex, int>> grouped;
  for (Complex p : f.poles()) {
    bool found = false;
    for (auto& [q, m] : grouped)
      if (std::abs(q - p) < 1e-12) {
        ++m;
        found = true;
      }
    if (!found) grouped.emplace_back(p, 1);
  }
  for (const auto& [p, mult] : grouped) {
    if (!hole.contains(p)) continue;
    REQUIRE(mult <= 2);
    if (mult == 1) {
      // res = scale * prod(p - zeros) / prod(p - other poles)
      Complex res = f.scale();
      for (Complex z : f.zeros()) res *= (p - z);
      for (Complex q : f.poles())
        if (std::abs(q - p) >= 1e-12) res /= (p - q);
      Complex pw = 1.0 / hole.radius;  // (p-a)^(q-1) / r^q at q=1
      for (int q = 1; q < nterms; ++q) {
        coeffs[static_cast<size_t>(q)] += res * pw;
        pw *= (p - hole.center) / hole.radius;
      }
    } else {
      // f = g(z)/(z-p)^2 near p: c2 = g(p), c1 = g'(p) by finite ratio.
      auto g = [&](Complex z) {
        Complex v = f.scale();
        for (Complex zz : f.zeros()) v *= (z - zz);
        for (Complex q : f.poles())
          if (std::abs(q - p) >= 1e-12) v /= (z - q);
        return v;
      };
      const double h = 1e-6;
      const Complex c2 = g(p);
      const Complex c1 = (g(p + h) - g(p - h)) / (2 * h);
      for (int q = 1; q < nterms; ++q) {
        Complex pw_c1 = std::pow((p - hole.center), q - 1) /
                        std::pow(hole.radius, q);
        coeffs[static_cast<size_t>(q)] += c1 * pw_c1;
        if (q >= 2) {
          Complex pw_c2 = double(q - 1) * std::pow((p - hole.center), q - 2) /
                          std::pow(hole.radius, q);
          coeffs[static_cast<size_t>(q)] += c2 * pw_c2;
        }
      }
    }
  }
  return coeffs;
}

}  // namespace

TEST_CASE("constants land entirely in the outer part") {
  const CircularDomain d = annulus(0.5, 2.0);
  const auto parts =
      cauchy_decompose(ComplexRational::constant(Complex(3, -2)), d);
  REQUIRE(parts.parts.size() == 2);
  CHECK(std::abs(parts.parts[0].coeffs[0] - Complex(3, -2)) < 1e-12);
  for (size_t k = 1; k < parts.parts[0].coeffs.size(); ++k)
    CHECK(std::abs(parts.parts[0].coeffs[k]) < 1e-12);
  for (Complex c : parts.parts[1].coeffs) CHECK(std::abs(c) < 1e-12);
}

TEST_CASE("z + 2/z splits into its analytic and principal parts") {
  const CircularDomain d = annulus(0.5, 2.0);
  const auto f = ComplexRational::add(
      ComplexRational::monomial(Complex(0, 0), 1),
      ComplexRational::monomial(Complex(0, 0), -1).scaled(2.0));
  const auto parts = cauchy_decompose(f, d);

  // f0 = z = 2 * (z/2): c0 = 0, c1 = 2.
  const auto& c = parts.parts[0].coeffs;
  CHECK(std::abs(c[0]) < 1e-11);
  CHECK(std::abs(c[1] - Complex(2, 0)) < 1e-11);
  for (size_t k = 2; k < c.size(); ++k) CHECK(std::abs(c[k]) < 1e-11);

  // f1 = 2/z = 4 * (0.5/z): d1 = 4.
  const auto& dd = parts.parts[1].coeffs;
  CHECK(std::abs(dd[1] - Complex(4, 0)) < 1e-11);
  for (size_t k = 2; k < dd.size(); ++k) CHECK(std::abs(dd[k]) < 1e-11);

  CHECK(std::abs(parts.eval(Complex(1, 0)) - Complex(3, 0)) < 1e-10);
}

TEST_CASE("principal part of a two-pole rational matches the residue oracle") {
  const CircularDomain d = annulus(0.5, 2.0);
  const ComplexRational f({}, {Complex(0.1, 0), Complex(3, 0)}, Complex(1, 0));
  const auto parts = cauchy_decompose(f, d);

  const auto want =
      principal_part_coeffs(f, d.component(1),
                            static_cast<int>(parts.parts[1].coeffs.size()));
  for (size_t q = 0; q < want.size(); ++q)
    CHECK(std::abs(parts.parts[1].coeffs[q] - want[q]) < 1e-10);

  // The outer part is the remainder: check by evaluation.
  std::mt19937 rng(3);
  for (int i = 0; i < 30; ++i) {
    const Complex z = testing::random_in_ring(rng, Complex(0, 0), 0.7, 1.8);
    CHECK(std::abs(parts.eval(z) - f(z)) < 1e-10);
  }
}

TEST_CASE("double pole in the hole matches the derivative oracle") {
  const CircularDomain d = annulus(0.5, 2.0);
  const ComplexRational f({Complex(1, 0)},
                          {Complex(0.1, 0.05), Complex(0.1, 0.05)},
                          Complex(1, 0));
  const auto parts = cauchy_decompose(f, d);
  const auto want =
      principal_part_coeffs(f, d.component(1),
                            static_cast<int>(parts.parts[1].coeffs.size()));
  for (size_t q = 0; q < want.size(); ++q)
    CHECK(std::abs(parts.parts[1].coeffs[q] - want[q]) < 1e-9);
}

TEST_CASE("random rationals: principal-part oracle and reconstruction") {
  const CircularDomain d = annulus(0.5, 2.0);
  std::mt19937 rng(20240808);
  for (int trial = 0; trial < 25; ++trial) {
    const auto f = testing::random_hinf_rational(rng, d);
    const auto parts = cauchy_decompose(f, d);
    const double nf = sup_norm(f, d);

    const auto want =
        principal_part_coeffs(f, d.component(1),
                              static_cast<int>(parts.parts[1].coeffs.size()));
    for (size_t q = 0; q < want.size(); ++q)
      CHECK(std::abs(parts.parts[1].coeffs[q] - want[q]) <= 1e-10 * (1 + nf));

    CHECK(decompose_residual(parts, f.evaluator(), d) <= 1e-10 * (1 + nf));
  }
}

TEST_CASE("decomposition is linear in the function") {
  const CircularDomain d = annulus(0.5, 2.0);
  std::mt19937 rng(77);
  const auto f = testing::random_hinf_rational(rng, d);
  const auto g = testing::random_hinf_rational(rng, d);
  const Complex alpha(0.7, -0.2), beta(-1.1, 0.4);

  const auto pf = cauchy_decompose(f, d);
  const auto pg = cauchy_decompose(g, d);
  const kernels::Evaluator combo = [&](Complex z) {
    return alpha * f(z) + beta * g(z);
  };
  const auto pc = cauchy_decompose(combo, d);

  for (size_t j = 0; j < pc.parts.size(); ++j) {
    const auto& cc = pc.parts[j].coeffs;
    for (size_t k = 0; k < cc.size(); ++k) {
      const Complex a =
          k < pf.parts[j].coeffs.size() ? pf.parts[j].coeffs[k] : Complex(0, 0);
      const Complex b =
          k < pg.parts[j].coeffs.size() ? pg.parts[j].coeffs[k] : Complex(0, 0);
      CHECK(std::abs(cc[k] - (alpha * a + beta * b)) < 1e-10);
    }
  }
}

TEST_CASE("two decompositions of the same function agree coefficientwise") {
  const CircularDomain d = annulus(0.5, 2.0);
  std::mt19937 rng(123);
  const auto f = testing::random_hinf_rational(rng, d);
  DecomposeOptions a, b;
  a.offset = 1e-3;
  b.offset = 5e-3;
  b.initial_samples = 1024;
  const auto pa = cauchy_decompose(f, d, a);
  const auto pb = cauchy_decompose(f, d, b);
  for (size_t j = 0; j < pa.parts.size(); ++j) {
    const size_t n = std::max(pa.parts[j].coeffs.size(), pb.parts[j].coeffs.size());
    for (size_t k = 0; k < n; ++k) {
      const Complex ca = k < pa.parts[j].coeffs.size() ? pa.parts[j].coeffs[k]
                                                       : Complex(0, 0);
      const Complex cb = k < pb.parts[j].coeffs.size() ? pb.parts[j].coeffs[k]
                                                       : Complex(0, 0);
      CHECK(std::abs(ca - cb) < 1e-10);
    }
  }
}

TEST_CASE("hole series vanish at infinity at the decay rate") {
  const CircularDomain d = annulus(0.5, 2.0);
  const ComplexRational f({}, {Complex(0.1, 0.2)}, Complex(1, 0));
  const auto parts = cauchy_decompose(f, d);
  const auto& s = parts.parts[1];
  const double r = d.component(1).radius;
  const double big = 1e6 * r;
  CHECK(std::abs(s.eval(Complex(big, 0))) <=
        2.0 * std::abs(s.coeffs[1]) * r / big);
}

TEST_CASE("pole in the domain is rejected") {
  const CircularDomain d = annulus(0.5, 2.0);
  const ComplexRational f({}, {Complex(1, 0)}, Complex(1, 0));
  CHECK_THROWS_AS(cauchy_decompose(f, d), Error);
}

TEST_CASE("slowly decaying reads fail as a truncation error") {
  const CircularDomain d = annulus(0.5, 2.0);
  // Pole just inside the hole rim: geometric decay ratio ~ 1/(1+mu), far too
  // slow for the 1e-12 tail at the coefficient cap.
  const ComplexRational f({}, {Complex(0.4999, 0)}, Complex(1, 0));
  DecomposeOptions opts;
  opts.max_coeffs = 256;
  try {
    (void)cauchy_decompose(f, d, opts);
    FAIL("expected TruncationFailure");
  } catch (const Error& e) {
    CHECK(e.name() == "TruncationFailure");
    CHECK(e.kind() == ErrorKind::Numerical);
  }
}

TEST_CASE("fixed-sample decomposition reports real-part bounds") {
  const CircularDomain d = annulus(0.5, 2.0);
  const auto f = ComplexRational::add(
      ComplexRational::monomial(Complex(0, 0), 1),
      ComplexRational::monomial(Complex(0, 0), -1).scaled(2.0));

  BoundarySamples bs;
  bs.offset = 1e-3;
  bs.count = 512;
  bs.samples.resize(2);
  for (int j = 0; j < 2; ++j) {
    const Contour c = component_contour(d, j, bs.offset, bs.count);
    bs.samples[static_cast<size_t>(j)] = kernels::map_eval(f.evaluator(), c.points());
  }
  const auto dec = decompose_bounded_above(bs, d);
  CHECK(decompose_residual(dec.parts, f.evaluator(), d) < 1e-10);

  // f0 = z: max Re on the closed annulus is 2. f1 = 2/z: max Re is 4.
  CHECK(dec.max_real[0] == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(dec.max_real[1] == doctest::Approx(4.0).epsilon(1e-6));

  SUBCASE("constant input") {
    BoundarySamples cs;
    cs.offset = 1e-3;
    cs.count = 64;
    cs.samples = {std::vector<Complex>(64, Complex(5, 1)),
                  std::vector<Complex>(64, Complex(5, 1))};
    const auto cdec = decompose_bounded_above(cs, d);
    CHECK(std::abs(cdec.parts.eval(Complex(1, 0)) - Complex(5, 1)) < 1e-11);
    CHECK(cdec.max_real[0] == doctest::Approx(5.0));
    CHECK(cdec.max_real[1] == doctest::Approx(0.0).epsilon(1e-9));
  }
}
