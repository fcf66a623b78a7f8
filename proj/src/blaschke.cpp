#include "circdom/blaschke.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "circdom/errors.hpp"

namespace circdom {

namespace {

constexpr double kUnitSlack = 1.0 - 1e-13;

}  // namespace

GeneralizedBlaschke GeneralizedBlaschke::for_zeros(const Disk& disk,
                                                   bool exterior,
                                                   std::vector<Complex> zeros) {
  GeneralizedBlaschke b;
  b.disk = disk;
  b.exterior = exterior;
  b.zeros = std::move(zeros);
  for (Complex z : b.zeros) {
    if (!is_finite(z))
      fail_validation("ZeroOutsideDomain", "non-finite Blaschke zero");
    if (std::abs(b.unit_parameter(z)) >= kUnitSlack)
      fail_validation("ZeroOutsideDomain",
                      exterior ? "exterior product needs zeros outside the closed disk"
                               : "interior product needs zeros inside the open disk");
  }
  return b;
}

Complex GeneralizedBlaschke::unit_parameter(Complex zero) const {
  if (exterior) return disk.radius / (zero - disk.center);
  return (zero - disk.center) / disk.radius;
}

Complex GeneralizedBlaschke::eval(Complex z) const {
  const Complex zeta = exterior ? disk.radius / (z - disk.center)
                                : (z - disk.center) / disk.radius;
  Complex v(1, 0);
  for (Complex zk : zeros) {
    const Complex w = unit_parameter(zk);
    if (std::abs(w) == 0.0)
      v *= zeta;
    else
      v *= (std::abs(w) / w) * (w - zeta) / (1.0 - std::conj(w) * zeta);
  }
  return v;
}

kernels::Evaluator GeneralizedBlaschke::evaluator() const {
  return [b = *this](Complex z) { return b.eval(z); };
}

ComplexRational GeneralizedBlaschke::rational() const {
  ComplexRational prod = ComplexRational::constant(Complex(1, 0));
  for (Complex zk : zeros)
    prod = ComplexRational::mul(prod,
                                blaschke_factor_rational(disk, exterior, zk));
  return prod;
}

ComplexRational blaschke_factor_rational(const Disk& disk, bool exterior,
                                         Complex zero) {
  const Complex a = disk.center;
  const double r = disk.radius;
  if (!exterior) {
    const Complex w = (zero - a) / r;
    if (std::abs(w) >= kUnitSlack)
      fail_validation("ZeroOutsideDomain",
                      "interior factor needs its zero inside the open disk");
    if (std::abs(w) == 0.0)
      return ComplexRational({a}, {}, Complex(1.0 / r, 0));
    // (|w|/w)(w - zeta)/(1 - conj(w) zeta) = (1/|w|) (z - zero)/(z - R),
    // R = a + r/conj(w), the reflection of the zero across the circle.
    const Complex reflection = a + r / std::conj(w);
    return ComplexRational({zero}, {reflection}, Complex(1.0 / std::abs(w), 0));
  }
  const Complex w = r / (zero - a);
  if (std::abs(w) >= kUnitSlack)
    fail_validation("ZeroOutsideDomain",
                    "exterior factor needs its zero outside the closed disk");
  // (|w|/w)(w - zeta)/(1 - conj(w) zeta) = |w| (z - zero)/(z - R),
  // R = a + r conj(w) inside the disk.
  const Complex reflection = a + r * std::conj(w);
  return ComplexRational({zero}, {reflection}, Complex(std::abs(w), 0));
}

GeneralizedBlaschke blaschke_for_component(const CircularDomain& domain, int j,
                                           std::vector<Complex> zeros) {
  return GeneralizedBlaschke::for_zeros(domain.component(j), j != 0,
                                        std::move(zeros));
}

BlaschkeCondition blaschke_condition(const std::vector<Complex>& zeros,
                                     const CircularDomain& domain) {
  BlaschkeCondition out;
  out.per_component.assign(static_cast<size_t>(domain.connectivity()), 0.0);
  std::vector<double> terms;
  terms.reserve(zeros.size());
  for (Complex z : zeros) {
    const Location loc = locate(domain, z);
    if (loc.tag != RegionTag::Interior && loc.tag != RegionTag::OnBoundary)
      fail_validation("ZeroOutsideDomain", "zero list leaves the domain");
    int nearest = 0;
    double best = std::abs(domain.component(0).circle_distance(z));
    for (int j = 1; j < domain.connectivity(); ++j) {
      const double d = std::abs(domain.component(j).circle_distance(z));
      if (d < best) {
        best = d;
        nearest = j;
      }
    }
    out.sum += best;
    out.per_component[static_cast<size_t>(nearest)] += best;
    terms.push_back(best);
  }

  const size_t n = terms.size();
  if (n >= 16) {
    const size_t w = n / 4;
    double last = 0.0, prev = 0.0;
    for (size_t i = n - w; i < n; ++i) last += terms[i];
    for (size_t i = n - 2 * w; i < n - w; ++i) prev += terms[i];
    out.diverging_trend = prev > 0.0 && last > 0.5 * prev;
  }
  return out;
}

namespace {

struct ContourSamples {
  std::vector<Complex> points;
  std::vector<Complex> values;
  double min_mod = 0.0;
  double max_mod = 0.0;
};

ContourSamples sample_contour(const kernels::Evaluator& f, const Contour& contour,
                              int m) {
  Contour c = contour;
  c.samples = m;
  ContourSamples s;
  s.points = c.points();
  s.values = kernels::map_eval(f, s.points);
  s.min_mod = std::numeric_limits<double>::infinity();
  for (Complex v : s.values) {
    if (!is_finite(v))
      fail_numerical("NonFiniteSample", "inf or nan on the winding contour");
    const double m_abs = std::abs(v);
    s.min_mod = std::min(s.min_mod, m_abs);
    s.max_mod = std::max(s.max_mod, m_abs);
  }
  return s;
}

void require_nonvanishing(const ContourSamples& s) {
  if (s.max_mod == 0.0 || s.min_mod <= tol::winding * s.max_mod)
    fail_validation("ZeroNearContour",
                    "function modulus collapses on the contour");
}

int pow2_at_least(int m) {
  int p = 16;
  while (p < m) p *= 2;
  return p;
}

}  // namespace

int winding_number(const ComplexRational& f, const Contour& contour,
                   int initial_samples) {
  if (f.is_zero())
    fail_validation("ZeroNearContour", "zero function has no winding number");
  const double rho = contour.effective_radius();
  constexpr int kMaxSamples = 1 << 16;
  int m = pow2_at_least(initial_samples);
  Complex raw;
  for (;;) {
    const ContourSamples s = sample_contour(f.evaluator(), contour, m);
    require_nonvanishing(s);
    // (1/2pi i) contour integral of f'/f = (rho/M) sum L(z_m) e^{i theta_m},
    // with the logarithmic derivative L exact from the zero/pole lists.
    Complex acc(0, 0);
    for (int k = 0; k < m; ++k) {
      const double theta = kTwoPi * k / m;
      acc += f.log_derivative(s.points[static_cast<size_t>(k)]) *
             std::polar(1.0, theta);
    }
    raw = acc * rho / double(m);
    const double k = std::round(raw.real());
    if (std::abs(raw - Complex(k, 0)) <= 0.1)
      return static_cast<int>(k);
    m *= 2;
    if (m > kMaxSamples) break;
  }
  std::ostringstream msg;
  msg << "integral " << raw.real() << (raw.imag() < 0 ? "" : "+") << raw.imag()
      << "i not near an integer";
  fail_numerical("NonIntegerWinding", msg.str());
}

int winding_number(const kernels::Evaluator& f, const Contour& contour,
                   int initial_samples) {
  constexpr int kMaxSamples = 1 << 16;
  int m = pow2_at_least(initial_samples);
  for (;;) {
    const ContourSamples s = sample_contour(f, contour, m);
    require_nonvanishing(s);
    double total = 0.0;
    bool steps_ok = true;
    for (int k = 0; k < m; ++k) {
      const Complex a = s.values[static_cast<size_t>(k)];
      const Complex b = s.values[static_cast<size_t>((k + 1) % m)];
      // Nearest-branch step: arg(b/a) already lands in (-pi, pi].
      const double step = std::arg(b / a);
      if (std::abs(step) > kPi / 2) {
        steps_ok = false;
        break;
      }
      total += step;
    }
    if (steps_ok) return static_cast<int>(std::lround(total / kTwoPi));
    m *= 2;
    if (m > kMaxSamples)
      fail_numerical("NonIntegerWinding",
                     "phase steps stay above pi/2 at the sample cap");
  }
}

std::vector<std::pair<Complex, int>> locate_zeros(const ComplexRational& f,
                                                  const CircularDomain& domain) {
  return f.zeros_in(domain);
}

namespace {

// Power sums s_p of the zeros inside the domain, from the argument principle
// along the boundary cycle. Spectral theta-derivative supplies f' for
// black-box functions.
std::vector<Complex> boundary_moments(const kernels::Evaluator& f,
                                      const CircularDomain& domain, int m,
                                      int pmax, double offset) {
  std::vector<Complex> s(static_cast<size_t>(pmax) + 1, Complex(0, 0));
  for (int j = 0; j < domain.connectivity(); ++j) {
    const Contour c = component_contour(domain, j, offset, m);
    const auto pts = c.points();
    const auto vals = kernels::map_eval(f, pts);
    double minmod = std::numeric_limits<double>::infinity(), maxmod = 0.0;
    for (Complex v : vals) {
      if (!is_finite(v))
        fail_numerical("NonFiniteSample", "inf or nan on a moment contour");
      minmod = std::min(minmod, std::abs(v));
      maxmod = std::max(maxmod, std::abs(v));
    }
    if (maxmod == 0.0 || minmod <= tol::winding * maxmod)
      fail_validation("ZeroNearContour",
                      "function modulus collapses on a moment contour");
    const auto dvals = kernels::spectral_theta_derivative(vals);
    // (1/2pi i) integral of z^p f'/f dz = (1/ i M) sum z_m^p D_m / f_m,
    // with D the theta-derivative of the samples. Holes (clockwise in the
    // boundary cycle) enter with a minus sign.
    const double orient = j == 0 ? 1.0 : -1.0;
    for (int i = 0; i < m; ++i) {
      const Complex base = dvals[static_cast<size_t>(i)] /
                           vals[static_cast<size_t>(i)] / Complex(0, double(m));
      Complex zp(1, 0);
      for (int p = 0; p <= pmax; ++p) {
        s[static_cast<size_t>(p)] += orient * zp * base;
        zp *= pts[static_cast<size_t>(i)];
      }
    }
  }
  return s;
}

}  // namespace

std::vector<std::pair<Complex, int>> locate_zeros(const kernels::Evaluator& f,
                                                  const CircularDomain& domain,
                                                  int max_zeros) {
  const double offset = 1e-3;
  constexpr int kMaxSamples = 1 << 14;
  int m = 256;
  std::vector<Complex> s = boundary_moments(f, domain, m, max_zeros, offset);
  for (;;) {
    if (m * 2 > kMaxSamples)
      fail_numerical("MomentRecoveryFailure", "contour moments did not settle");
    const auto s2 = boundary_moments(f, domain, m * 2, max_zeros, offset);
    bool settled = std::abs(s2[0].real() - std::round(s2[0].real())) < 0.02 &&
                   std::abs(s2[0].imag()) < 0.02;
    for (size_t p = 0; settled && p < s.size(); ++p)
      settled = std::abs(s2[p] - s[p]) <= 1e-7 * (1.0 + std::abs(s2[p]));
    s = s2;
    m *= 2;
    if (settled) break;
  }

  const long n = std::lround(s[0].real());
  if (n < 0 || n > max_zeros) {
    std::ostringstream msg;
    msg << "zero count " << s[0].real() << " outside [0, " << max_zeros << "]";
    fail_numerical("MomentRecoveryFailure", msg.str());
  }
  if (n == 0) return {};

  // Newton identities: e_k = (1/k) sum_{i=1..k} (-1)^(i-1) e_{k-i} s_i.
  std::vector<Complex> e(static_cast<size_t>(n) + 1, Complex(0, 0));
  e[0] = Complex(1, 0);
  for (long k = 1; k <= n; ++k) {
    Complex acc(0, 0);
    double sign = 1.0;
    for (long i = 1; i <= k; ++i) {
      acc += sign * e[static_cast<size_t>(k - i)] * s[static_cast<size_t>(i)];
      sign = -sign;
    }
    e[static_cast<size_t>(k)] = acc / double(k);
  }
  // Monic polynomial with the zeros as roots, ascending coefficients.
  std::vector<Complex> coeffs(static_cast<size_t>(n) + 1);
  for (long k = 0; k <= n; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    coeffs[static_cast<size_t>(n - k)] = sign * e[static_cast<size_t>(k)];
  }
  std::vector<Complex> roots = poly::roots(coeffs);
  if (static_cast<long>(roots.size()) != n)
    fail_numerical("MomentRecoveryFailure", "root count mismatch");

  // Newton polish on f itself with a central-difference derivative.
  const double h = 1e-7 * domain.outer().radius;
  double scale = 0.0;
  {
    const Contour c = component_contour(domain, 0, offset, 64);
    for (Complex v : kernels::map_eval(f, c.points()))
      scale = std::max(scale, std::abs(v));
  }
  for (Complex& root : roots) {
    for (int it = 0; it < 5; ++it) {
      const Complex fv = f(root);
      const Complex df = (f(root + h) - f(root - h)) / (2.0 * h);
      if (std::abs(df) == 0.0) break;
      const Complex step = fv / df;
      if (!is_finite(step) || std::abs(step) > 0.1 * domain.outer().radius) break;
      root -= step;
    }
    if (std::abs(f(root)) > 1e-6 * (1.0 + scale))
      fail_numerical("MomentRecoveryFailure", "recovered root does not vanish");
  }

  // Group into multiplicities; keep only interior points.
  std::vector<std::pair<Complex, int>> out;
  const double group_tol = 1e-6 * domain.diameter();
  for (Complex root : roots) {
    if (locate(domain, root).tag != RegionTag::Interior) continue;
    bool merged = false;
    for (auto& [z, mult] : out)
      if (std::abs(z - root) <= group_tol) {
        ++mult;
        merged = true;
        break;
      }
    if (!merged) out.emplace_back(root, 1);
  }
  return out;
}

std::vector<std::vector<Complex>> split_zeros(const std::vector<Complex>& zeros,
                                              const CircularDomain& domain) {
  std::vector<std::vector<Complex>> out(
      static_cast<size_t>(domain.connectivity()));
  for (Complex z : zeros) {
    int best = 0;
    double dist = std::abs(domain.component(0).circle_distance(z));
    for (int j = 1; j < domain.connectivity(); ++j) {
      const double d = std::abs(domain.component(j).circle_distance(z));
      if (d < dist) {
        dist = d;
        best = j;
      }
    }
    out[static_cast<size_t>(best)].push_back(z);
  }
  return out;
}

}  // namespace circdom
