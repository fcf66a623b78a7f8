#include "circdom/factorization.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "circdom/errors.hpp"

namespace circdom {

namespace {

Complex int_power(Complex z, int k) {
  Complex p = 1.0;
  for (int i = 0; i < std::abs(k); ++i) p *= z;
  return k >= 0 ? p : 1.0 / p;
}

// Samples log q on the offset contour of one component, unwrapping the
// phase along the contour. The branch anchor is the principal argument at
// theta = 0; per-contour anchors may disagree by 2 pi i, which the
// decomposition reads cannot see (hole reads skip the constant bin, the
// outer read keeps its own anchor). Phase steps must stay below pi/2 to
// pin the branch, so the walk is refined internally if the requested
// resolution is too coarse; the closure sum must vanish, anything else
// means a leftover winding.
std::vector<Complex> log_contour_samples(const ComplexRational& q,
                                         const CircularDomain& domain,
                                         int component, double offset,
                                         int count) {
  const auto eval = q.evaluator();
  for (int refine = 1; refine <= 64; refine *= 2) {
    const int m = count * refine;
    const Contour contour = component_contour(domain, component, offset, m);
    const auto pts = contour.points();
    const auto vals = kernels::map_eval(eval, pts);

    double min_mod = std::numeric_limits<double>::infinity();
    double max_mod = 0.0;
    for (const Complex& v : vals) {
      if (!is_finite(v)) fail_numerical("NonFiniteSample", "log sample is not finite");
      min_mod = std::min(min_mod, std::abs(v));
      max_mod = std::max(max_mod, std::abs(v));
    }
    if (min_mod <= tol::winding * max_mod)
      fail_numerical("ZeroNearContour",
                     "function vanishes near the component " +
                         std::to_string(component) + " contour");

    std::vector<double> phase(m);
    phase[0] = std::arg(vals[0]);
    double closure = 0.0;
    bool steps_ok = true;
    for (int i = 0; i < m; ++i) {
      const double step = std::arg(vals[(i + 1) % m] / vals[i]);
      if (std::abs(step) > kPi / 2) {
        steps_ok = false;
        break;
      }
      closure += step;
      if (i + 1 < m) phase[i + 1] = phase[i] + step;
    }
    if (!steps_ok) continue;
    if (std::abs(closure) > 0.1 * kTwoPi)
      fail_numerical("PhaseUnwrapInconsistent",
                     "residual winding on component " + std::to_string(component) +
                         " after exponent removal");

    std::vector<Complex> out(count);
    for (int i = 0; i < count; ++i) {
      const Complex v = vals[static_cast<std::size_t>(i) * refine];
      out[i] = Complex(std::log(std::abs(v)), phase[static_cast<std::size_t>(i) * refine]);
    }
    return out;
  }
  fail_numerical("PhaseUnwrapInconsistent",
                 "phase steps on component " + std::to_string(component) +
                     " stay above pi/2 under refinement");
}

std::vector<Complex> grid_with_boundary(const CircularDomain& domain) {
  auto pts = polar_grid(domain, 24, 64, 0.0);
  // A few offset rings catch errors that peak just inside the contours.
  for (int j = 0; j < domain.connectivity(); ++j) {
    const Contour c = component_contour(domain, j, 5e-4, 64);
    const auto ring = c.points();
    pts.insert(pts.end(), ring.begin(), ring.end());
  }
  return pts;
}

struct PairingTolerance {
  double value;
  explicit PairingTolerance(const CircularDomain& domain)
      : value(1e-9 * std::max(1.0, domain.diameter())) {}
};

// Rewrites the zero list of a self-paired component so it is exactly
// conjugation closed: near-real zeros snap to the axis, the rest must
// pair up within the tolerance.
std::vector<Complex> close_under_conjugation(const std::vector<Complex>& zeros,
                                             double tol_pair) {
  std::vector<Complex> out;
  out.reserve(zeros.size());
  std::vector<bool> used(zeros.size(), false);
  for (std::size_t i = 0; i < zeros.size(); ++i) {
    if (used[i]) continue;
    const Complex z = zeros[i];
    if (std::abs(z.imag()) <= tol_pair) {
      out.push_back(Complex(z.real(), 0.0));
      used[i] = true;
      continue;
    }
    std::size_t partner = zeros.size();
    double best = tol_pair;
    for (std::size_t k = i + 1; k < zeros.size(); ++k) {
      if (used[k]) continue;
      const double d = std::abs(std::conj(zeros[k]) - z);
      if (d <= best) {
        best = d;
        partner = k;
      }
    }
    if (partner == zeros.size())
      fail_validation("NotSymmetric",
                      "zero has no conjugate partner within tolerance");
    const Complex w = 0.5 * (z + std::conj(zeros[partner]));
    out.push_back(w);
    out.push_back(std::conj(w));
    used[i] = used[partner] = true;
  }
  return out;
}

// Verifies the zeros of a swapped pair of components mirror each other and
// returns the exact mirror of the first list for the second component.
std::vector<Complex> mirror_of(const std::vector<Complex>& zeros,
                               const std::vector<Complex>& image,
                               double tol_pair) {
  if (zeros.size() != image.size())
    fail_validation("NotSymmetric", "paired components carry different zero counts");
  std::vector<bool> used(image.size(), false);
  std::vector<Complex> out;
  out.reserve(zeros.size());
  for (const Complex& z : zeros) {
    std::size_t partner = image.size();
    double best = tol_pair;
    for (std::size_t k = 0; k < image.size(); ++k) {
      if (used[k]) continue;
      const double d = std::abs(std::conj(image[k]) - z);
      if (d <= best) {
        best = d;
        partner = k;
      }
    }
    if (partner == image.size())
      fail_validation("NotSymmetric",
                      "zero has no mirror in the paired component");
    used[partner] = true;
    out.push_back(std::conj(z));
  }
  return out;
}

std::vector<Complex> averaged_coeffs(const std::vector<Complex>& own,
                                     const std::vector<Complex>& paired) {
  const std::size_t n = std::max(own.size(), paired.size());
  std::vector<Complex> out(n, Complex(0.0, 0.0));
  for (std::size_t k = 0; k < n; ++k) {
    const Complex a = k < own.size() ? own[k] : Complex(0.0, 0.0);
    const Complex b = k < paired.size() ? paired[k] : Complex(0.0, 0.0);
    out[k] = 0.5 * (a + std::conj(b));
  }
  return out;
}

}  // namespace

Complex MonomialProduct::eval(Complex z) const {
  Complex v = static_cast<double>(sign);
  for (std::size_t j = 0; j < centers.size(); ++j) {
    if (exponents[j] == 0) continue;
    v *= int_power(z - centers[j], exponents[j]);
  }
  return v;
}

ComplexRational MonomialProduct::rational() const {
  std::vector<Complex> zeros;
  std::vector<Complex> poles;
  for (std::size_t j = 0; j < centers.size(); ++j) {
    const int k = exponents[j];
    auto& list = k > 0 ? zeros : poles;
    for (int i = 0; i < std::abs(k); ++i) list.push_back(centers[j]);
  }
  return ComplexRational(std::move(zeros), std::move(poles),
                         Complex(static_cast<double>(sign), 0.0));
}

Complex AnalyticFactor::eval(Complex z) const {
  return blaschke.eval(z) * std::exp(log_part.eval(z));
}

kernels::Evaluator AnalyticFactor::evaluator() const {
  AnalyticFactor copy = *this;
  return [copy](Complex z) { return copy.eval(z); };
}

Complex Factorization::eval(Complex z) const {
  Complex v = monomials.eval(z);
  for (const auto& f : factors) v *= f.eval(z);
  return v;
}

kernels::Evaluator Factorization::evaluator() const {
  Factorization copy = *this;
  return [copy](Complex z) { return copy.eval(z); };
}

LogResult log_nonvanishing(const ComplexRational& g, const CircularDomain& domain,
                           const DecomposeOptions& opts) {
  if (g.is_zero())
    fail_validation("IdenticallyZero", "cannot take the log of the zero function");

  LogResult result;
  result.exponents.resize(static_cast<std::size_t>(domain.connectivity()) - 1, 0);
  ComplexRational q = g;
  for (int j = 1; j < domain.connectivity(); ++j) {
    const Contour contour =
        component_contour(domain, j, opts.offset, opts.initial_samples);
    const int k = winding_number(g, contour, opts.initial_samples);
    result.exponents[static_cast<std::size_t>(j) - 1] = k;
    if (k != 0)
      q = ComplexRational::mul(
          q, ComplexRational::monomial(domain.component(j).center, -k));
  }

  const ComponentSampler sampler = [&q, &domain, &opts](int component, int count) {
    return log_contour_samples(q, domain, component, opts.offset, count);
  };
  result.parts = cauchy_decompose(sampler, domain, opts);
  return result;
}

Factorization multiplicative_factorize(const ComplexRational& f,
                                       const CircularDomain& domain,
                                       const DecomposeOptions& opts) {
  if (f.is_zero())
    fail_validation("IdenticallyZero", "the zero function has no factorization");

  std::vector<Complex> interior_zeros;
  for (const Complex& z : f.zeros()) {
    const Location loc = locate(domain, z);
    if (loc.tag == RegionTag::OnBoundary)
      fail_validation("ZeroOnBoundary", "zero sits on the domain boundary");
    if (loc.tag == RegionTag::Interior) interior_zeros.push_back(z);
  }
  for (const Complex& p : f.poles()) {
    const Location loc = locate(domain, p);
    if (loc.tag == RegionTag::Interior)
      fail_validation("PoleInDomain", "pole inside the domain");
    if (loc.tag == RegionTag::OnBoundary)
      fail_validation("PoleOnBoundary", "pole on the domain boundary");
  }

  const auto per_component = split_zeros(interior_zeros, domain);

  Factorization fact;
  ComplexRational blaschke_product = ComplexRational::constant(1.0);
  for (int j = 0; j < domain.connectivity(); ++j) {
    auto blaschke = blaschke_for_component(domain, j, per_component[static_cast<std::size_t>(j)]);
    blaschke_product = ComplexRational::mul(blaschke_product, blaschke.rational());
    fact.factors.push_back(AnalyticFactor{std::move(blaschke), ComponentSeries{}});
  }

  const ComplexRational g = ComplexRational::mul(f, blaschke_product.inverse());
  LogResult logs = log_nonvanishing(g, domain, opts);

  for (int j = 0; j < domain.connectivity(); ++j)
    fact.factors[static_cast<std::size_t>(j)].log_part =
        std::move(logs.parts.parts[static_cast<std::size_t>(j)]);

  fact.monomials.exponents = std::move(logs.exponents);
  fact.monomials.centers.reserve(fact.monomials.exponents.size());
  for (int j = 1; j < domain.connectivity(); ++j)
    fact.monomials.centers.push_back(domain.component(j).center);
  fact.monomials.sign = 1;

  fact.residual = factorization_residual(fact, f.evaluator(), domain);
  if (fact.residual > tol::factor)
    fail_numerical("TruncationFailure",
                   "factorization residual " + std::to_string(fact.residual) +
                       " exceeds tolerance");
  return fact;
}

Factorization symmetrize_factorization(const Factorization& fact,
                                       const ComplexRational& f,
                                       const CircularDomain& domain,
                                       const DecomposeOptions&) {
  const auto sigma_opt = conjugate_component_map(domain);
  if (!sigma_opt)
    fail_validation("NotSymmetric", "domain is not symmetric about the real axis");
  const auto& sigma = *sigma_opt;

  const double defect = symmetry_defect(f.evaluator(), domain);
  const double scale = sup_norm(f, domain);
  if (defect > tol::symmetry * (1.0 + scale))
    fail_validation("NotSymmetric",
                    "function differs from its conjugate reflection by " +
                        std::to_string(defect));

  const PairingTolerance pair_tol(domain);
  Factorization out = fact;

  // Exponents must agree across mirrored holes or the two reflections of
  // the monomial part cannot match.
  for (int j = 1; j < domain.connectivity(); ++j) {
    const int sj = sigma[static_cast<std::size_t>(j)];
    if (out.monomials.exponents[static_cast<std::size_t>(j) - 1] !=
        fact.monomials.exponents[static_cast<std::size_t>(sj) - 1])
      fail_validation("NotSymmetric", "winding exponents differ across paired holes");
  }

  for (int j = 0; j < domain.connectivity(); ++j) {
    const int sj = sigma[static_cast<std::size_t>(j)];
    auto& factor = out.factors[static_cast<std::size_t>(j)];
    const auto& own = fact.factors[static_cast<std::size_t>(j)];
    const auto& paired = fact.factors[static_cast<std::size_t>(sj)];

    if (sj == j) {
      factor.blaschke.zeros =
          close_under_conjugation(own.blaschke.zeros, pair_tol.value);
    } else if (sj > j) {
      auto mirrored = mirror_of(own.blaschke.zeros, paired.blaschke.zeros, pair_tol.value);
      out.factors[static_cast<std::size_t>(sj)].blaschke.zeros = std::move(mirrored);
    }

    factor.log_part.coeffs =
        averaged_coeffs(own.log_part.coeffs, paired.log_part.coeffs);
  }

  const auto f_eval = f.evaluator();
  out.monomials.sign = 1;
  const double res_plus = factorization_residual(out, f_eval, domain);
  out.monomials.sign = -1;
  const double res_minus = factorization_residual(out, f_eval, domain);
  if (res_plus <= res_minus) {
    out.monomials.sign = 1;
    out.residual = res_plus;
  } else {
    out.residual = res_minus;
  }
  if (out.residual > tol::factor)
    fail_numerical("AmbiguousSign",
                   "neither sign reconstructs the function (best residual " +
                       std::to_string(out.residual) + ")");
  return out;
}

double factorization_residual(const Factorization& fact,
                              const kernels::Evaluator& f,
                              const CircularDomain& domain) {
  const auto pts = grid_with_boundary(domain);
  const auto want = kernels::map_eval(f, pts);
  const auto got = kernels::map_eval(fact.evaluator(), pts);
  double err = 0.0;
  double mag = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    err = std::max(err, std::abs(got[i] - want[i]));
    mag = std::max(mag, std::abs(want[i]));
  }
  return err / (1.0 + mag);
}

}  // namespace circdom
