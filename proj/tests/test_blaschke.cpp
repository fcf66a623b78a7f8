#include "circdom/blaschke.hpp"

#include <random>

#include "circdom/errors.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace circdom;

TEST_CASE("unit-disk factor basics") {
  const Disk unit{Complex(0, 0), 1.0};

  const auto b0 = GeneralizedBlaschke::for_zeros(unit, false, {Complex(0, 0)});
  CHECK(std::abs(b0.eval(Complex(0.5, 0)) - Complex(0.5, 0)) < 1e-15);

  const auto be = GeneralizedBlaschke::for_zeros(unit, true, {Complex(2, 0)});
  CHECK(std::abs(be.eval(Complex(2, 0))) < 1e-15);

  const auto b5 = GeneralizedBlaschke::for_zeros(unit, false, {Complex(0.5, 0)});
  for (double th : {0.0, kPi / 3, kPi})
    CHECK(std::abs(std::abs(b5.eval(std::polar(1.0, th))) - 1.0) < 1e-12);
}

TEST_CASE("misplaced zeros are rejected") {
  const Disk unit{Complex(0, 0), 1.0};
  CHECK_THROWS_AS(GeneralizedBlaschke::for_zeros(unit, false, {Complex(2, 0)}),
                  Error);
  CHECK_THROWS_AS(GeneralizedBlaschke::for_zeros(unit, true, {Complex(0.5, 0)}),
                  Error);
  CHECK_THROWS_AS(GeneralizedBlaschke::for_zeros(unit, false, {Complex(1, 0)}),
                  Error);
}

TEST_CASE("random products are unimodular on their circle") {
  std::mt19937 rng(314);
  std::uniform_int_distribution<int> nz(1, 4);
  std::uniform_real_distribution<double> rad(0.3, 2.5), cen(-1.0, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    const Disk disk{Complex(cen(rng), cen(rng)), rad(rng)};
    const bool exterior = trial % 2 == 1;
    std::vector<Complex> zeros;
    for (int i = nz(rng); i > 0; --i) {
      const Complex w =
          testing::random_in_ring(rng, Complex(0, 0), 0.0, 0.9);
      zeros.push_back(exterior ? disk.center + disk.radius / w
                               : disk.center + disk.radius * w);
    }
    const auto b = GeneralizedBlaschke::for_zeros(disk, exterior, zeros);
    for (int k = 0; k < 64; ++k) {
      const Complex z =
          disk.center + disk.radius * std::polar(1.0, kTwoPi * k / 64);
      CHECK(std::abs(std::abs(b.eval(z)) - 1.0) <= 1e-10);
    }
  }
}

TEST_CASE("interior products are contractive with the listed zeros") {
  std::mt19937 rng(27);
  const Disk disk{Complex(0.3, -0.2), 1.4};
  const std::vector<Complex> zeros = {
      disk.center + 0.5 * disk.radius * std::polar(1.0, 1.0),
      disk.center + 0.1 * disk.radius * std::polar(1.0, -2.0)};
  const auto b = GeneralizedBlaschke::for_zeros(disk, false, zeros);
  for (int i = 0; i < 100; ++i) {
    const Complex z = testing::random_in_ring(rng, disk.center, 0.0,
                                              0.999 * disk.radius);
    CHECK(std::abs(b.eval(z)) < 1.0);
  }
  for (Complex z : zeros) CHECK(std::abs(b.eval(z)) < 1e-13);
}

TEST_CASE("rational form agrees with the direct product") {
  std::mt19937 rng(555);
  const Disk disk{Complex(0.5, 0.1), 0.8};

  const auto bi = GeneralizedBlaschke::for_zeros(
      disk, false, {disk.center + Complex(0.3, 0.1), disk.center});
  const auto ri = bi.rational();
  for (int i = 0; i < 50; ++i) {
    const Complex z = testing::random_in_ring(rng, disk.center, 0.0, 0.79);
    CHECK(std::abs(bi.eval(z) - ri(z)) < 1e-12);
  }

  const auto be = GeneralizedBlaschke::for_zeros(
      disk, true, {disk.center + Complex(1.5, 0.4), disk.center + Complex(-2, 0)});
  const auto re = be.rational();
  for (int i = 0; i < 50; ++i) {
    const Complex z = testing::random_in_ring(rng, disk.center, 0.81, 5.0);
    CHECK(std::abs(be.eval(z) - re(z)) < 1e-12);
  }
}

TEST_CASE("component products stay in H-infinity of the domain") {
  const CircularDomain d = annulus(0.5, 2.0);
  const auto outer_b = blaschke_for_component(d, 0, {Complex(1, 0)});
  CHECK(outer_b.rational().in_hinf(d));
  const auto hole_b = blaschke_for_component(d, 1, {Complex(1, 0)});
  CHECK(hole_b.rational().in_hinf(d));
  // Both vanish at the same point but carry different pole structure.
  CHECK(std::abs(outer_b.eval(Complex(1, 0))) < 1e-14);
  CHECK(std::abs(hole_b.eval(Complex(1, 0))) < 1e-14);
}

TEST_CASE("blaschke condition sums distances and flags trends") {
  const CircularDomain d = annulus(0.5, 2.0);

  const auto single = blaschke_condition({Complex(1, 0)}, d);
  CHECK(single.sum == doctest::Approx(0.5));
  CHECK_FALSE(single.diverging_trend);

  std::vector<Complex> geometric;
  for (int k = 1; k <= 20; ++k)
    geometric.push_back(Complex(2.0 - std::pow(2.0, -k), 0));
  const auto geo = blaschke_condition(geometric, d);
  CHECK(geo.sum == doctest::Approx(1.0).epsilon(1e-4));
  CHECK_FALSE(geo.diverging_trend);
  CHECK(geo.per_component[0] == doctest::Approx(geo.sum));

  std::vector<Complex> harmonic;
  for (int k = 1; k <= 10000; ++k)
    harmonic.push_back(Complex(2.0 - 1.0 / k, 0));
  CHECK(blaschke_condition(harmonic, d).diverging_trend);

  CHECK_THROWS_AS(blaschke_condition({Complex(0.1, 0)}, d), Error);
}

TEST_CASE("winding numbers of monomials on the unit circle") {
  const Contour unit{{Complex(0, 0), 1.0}, 0.0, +1, 256, true};
  for (int k = -3; k <= 3; ++k) {
    const auto f = ComplexRational::monomial(Complex(0, 0), k);
    CHECK(winding_number(f, unit) == k);
    CHECK(winding_number(f.evaluator(), unit) == k);
  }
}

TEST_CASE("winding counts zeros minus poles inside the circle") {
  const Contour half{{Complex(0, 0), 0.5}, 0.0, +1, 256, true};
  CHECK(winding_number(ComplexRational({Complex(0.2, 0)}, {Complex(0.1, 0)},
                                       Complex(1, 0)),
                       half) == 0);
  CHECK(winding_number(ComplexRational({Complex(0.1, 0), Complex(3, 0)}, {},
                                       Complex(1, 0)),
                       half) == 1);
}

TEST_CASE("winding on random rationals matches the stored counts") {
  std::mt19937 rng(404);
  const CircularDomain d = annulus(0.5, 2.0);
  const Contour circle{{Complex(0, 0), 1.8}, 0.0, +1, 512, true};
  for (int trial = 0; trial < 30; ++trial) {
    const auto f = testing::random_hinf_rational(rng, d);
    int want = 0;
    for (Complex z : f.zeros())
      if (std::abs(z) < 1.8) ++want;
    for (Complex p : f.poles())
      if (std::abs(p) < 1.8) --want;
    CHECK(winding_number(f, circle) == want);
    CHECK(winding_number(f.evaluator(), circle) == want);
  }
}

TEST_CASE("winding is additive under multiplication") {
  std::mt19937 rng(808);
  const CircularDomain d = annulus(0.5, 2.0);
  const Contour circle{{Complex(0, 0), 1.8}, 0.0, +1, 512, true};
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = testing::random_hinf_rational(rng, d);
    const auto g = testing::random_hinf_rational(rng, d);
    const auto fg = ComplexRational::mul(f, g);
    CHECK(winding_number(fg, circle) ==
          winding_number(f, circle) + winding_number(g, circle));
  }
}

TEST_CASE("a zero sitting on the contour is refused") {
  const Contour unit{{Complex(0, 0), 1.0}, 0.0, +1, 256, true};
  const ComplexRational f({Complex(1, 0)}, {}, Complex(1, 0));
  try {
    (void)winding_number(f, unit);
    FAIL("expected ZeroNearContour");
  } catch (const Error& e) {
    CHECK(e.name() == "ZeroNearContour");
  }
}

TEST_CASE("zero location for rationals is exact") {
  const CircularDomain d = annulus(0.5, 2.0);
  const auto one = locate_zeros(
      ComplexRational({Complex(1, 0), Complex(0.1, 0)}, {}, Complex(1, 0)), d);
  REQUIRE(one.size() == 1);
  CHECK(one[0].first == Complex(1, 0));

  const auto dbl = locate_zeros(
      ComplexRational({Complex(1, 0), Complex(1, 0)}, {}, Complex(1, 0)), d);
  REQUIRE(dbl.size() == 1);
  CHECK(dbl[0].second == 2);
}

TEST_CASE("black-box zero recovery from contour moments") {
  const CircularDomain d = annulus(0.5, 2.0);

  const kernels::Evaluator f = [](Complex z) {
    return (z - 1.0) * (z - 1.5);
  };
  auto zs = locate_zeros(f, d);
  std::sort(zs.begin(), zs.end(), [](const auto& a, const auto& b) {
    return a.first.real() < b.first.real();
  });
  REQUIRE(zs.size() == 2);
  CHECK(std::abs(zs[0].first - Complex(1, 0)) < 1e-8);
  CHECK(std::abs(zs[1].first - Complex(1.5, 0)) < 1e-8);

  const kernels::Evaluator g = [](Complex z) {
    const Complex u = z - Complex(1, 0.2);
    return u * u;
  };
  const auto zg = locate_zeros(g, d);
  REQUIRE(zg.size() == 1);
  CHECK(zg[0].second == 2);
  CHECK(std::abs(zg[0].first - Complex(1, 0.2)) < 1e-6);

  const kernels::Evaluator zero_free = [](Complex z) { return std::exp(z); };
  CHECK(locate_zeros(zero_free, d).empty());
}

TEST_CASE("zero splitting by nearest component") {
  const CircularDomain d = annulus(0.5, 2.0);
  const auto split = split_zeros({Complex(0.6, 0), Complex(1.9, 0)}, d);
  REQUIRE(split.size() == 2);
  CHECK(split[0] == std::vector<Complex>{Complex(1.9, 0)});
  CHECK(split[1] == std::vector<Complex>{Complex(0.6, 0)});

  // Equidistant point goes to the lowest index, the outer circle.
  const auto tie = split_zeros({Complex(1.25, 0)}, d);
  CHECK(tie[0].size() == 1);
  CHECK(tie[1].empty());

  const auto three = CircularDomain::validate(
      {Complex(0, 0), 4.0}, {{Complex(-2, 0), 0.5}, {Complex(2, 0), 0.5}});
  const auto s3 = split_zeros({Complex(2.6, 0)}, three);
  CHECK(s3[2].size() == 1);
}
