#include "circdom/rational.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "circdom/errors.hpp"

namespace circdom {

namespace {

// Cancels pairs (z in a, p in b) within tol; both elements are dropped.
void cancel_pairs(std::vector<Complex>& a, std::vector<Complex>& b, double tol) {
  for (size_t i = 0; i < a.size();) {
    bool cancelled = false;
    for (size_t j = 0; j < b.size(); ++j) {
      if (std::abs(a[i] - b[j]) <= tol) {
        b.erase(b.begin() + static_cast<long>(j));
        a.erase(a.begin() + static_cast<long>(i));
        cancelled = true;
        break;
      }
    }
    if (!cancelled) ++i;
  }
}

}  // namespace

ComplexRational::ComplexRational(std::vector<Complex> zeros,
                                 std::vector<Complex> poles, Complex scale)
    : zeros_(std::move(zeros)), poles_(std::move(poles)), scale_(scale) {
  if (scale_ == Complex(0, 0)) {
    if (!zeros_.empty() || !poles_.empty())
      fail_validation("InvalidFunction",
                      "zero scale is reserved for the zero function");
    return;
  }
  for (Complex z : zeros_)
    if (!is_finite(z)) fail_validation("InvalidFunction", "non-finite zero");
  for (Complex p : poles_)
    if (!is_finite(p)) fail_validation("InvalidFunction", "non-finite pole");
  for (Complex z : zeros_)
    for (Complex p : poles_)
      if (std::abs(z - p) <= tol::cancel)
        fail_validation("InvalidFunction",
                        "zero and pole coincide; cancel them first");
}

ComplexRational ComplexRational::constant(Complex c) {
  ComplexRational f;
  f.scale_ = c;
  return f;
}

ComplexRational ComplexRational::monomial(Complex a, int k) {
  ComplexRational f;
  if (k > 0)
    f.zeros_.assign(static_cast<size_t>(k), a);
  else if (k < 0)
    f.poles_.assign(static_cast<size_t>(-k), a);
  return f;
}

int ComplexRational::degree() const {
  return static_cast<int>(std::max(zeros_.size(), poles_.size()));
}

Complex ComplexRational::operator()(Complex z) const {
  if (is_zero()) return Complex(0, 0);
  for (Complex p : poles_)
    if (std::abs(z - p) <= tol::cancel)
      fail_validation("EvalAtPole", "evaluation point is a pole");
  Complex v = scale_;
  for (Complex zk : zeros_) v *= (z - zk);
  for (Complex pk : poles_) v /= (z - pk);
  return v;
}

Complex ComplexRational::log_derivative(Complex z) const {
  Complex s(0, 0);
  for (Complex zk : zeros_) s += 1.0 / (z - zk);
  for (Complex pk : poles_) s -= 1.0 / (z - pk);
  return s;
}

kernels::Evaluator ComplexRational::evaluator() const {
  return [f = *this](Complex z) { return f(z); };
}

ComplexRational ComplexRational::scaled(Complex c) const {
  if (c == Complex(0, 0)) return zero_function();
  ComplexRational f = *this;
  f.scale_ *= c;
  return f;
}

ComplexRational ComplexRational::conjugated() const {
  ComplexRational f;
  f.scale_ = std::conj(scale_);
  f.zeros_.reserve(zeros_.size());
  f.poles_.reserve(poles_.size());
  for (Complex z : zeros_) f.zeros_.push_back(std::conj(z));
  for (Complex p : poles_) f.poles_.push_back(std::conj(p));
  return f;
}

ComplexRational ComplexRational::inverse() const {
  if (is_zero())
    fail_validation("InvalidFunction", "the zero function has no reciprocal");
  ComplexRational f;
  f.scale_ = 1.0 / scale_;
  f.zeros_ = poles_;
  f.poles_ = zeros_;
  return f;
}

ComplexRational ComplexRational::mul(const ComplexRational& a,
                                     const ComplexRational& b) {
  if (a.is_zero() || b.is_zero()) return zero_function();
  std::vector<Complex> zeros = a.zeros_;
  zeros.insert(zeros.end(), b.zeros_.begin(), b.zeros_.end());
  std::vector<Complex> poles = a.poles_;
  poles.insert(poles.end(), b.poles_.begin(), b.poles_.end());
  cancel_pairs(zeros, poles, tol::cancel);
  return ComplexRational(std::move(zeros), std::move(poles),
                         a.scale_ * b.scale_);
}

ComplexRational ComplexRational::add(const ComplexRational& a,
                                     const ComplexRational& b, int max_degree) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  // (na*db + nb*da) / (da*db) in coefficient form.
  const auto na = poly::from_roots(a.zeros_, a.scale_);
  const auto da = poly::from_roots(a.poles_, Complex(1, 0));
  const auto nb = poly::from_roots(b.zeros_, b.scale_);
  const auto db = poly::from_roots(b.poles_, Complex(1, 0));
  const auto num = poly::add(poly::mul(na, db), poly::mul(nb, da));
  if (static_cast<int>(num.size()) - 1 > max_degree ||
      static_cast<int>(da.size() + db.size()) - 2 > max_degree) {
    std::ostringstream msg;
    msg << "sum degree exceeds " << max_degree;
    fail_numerical("DegreeOverflow", msg.str());
  }

  std::vector<Complex> poles = a.poles_;
  poles.insert(poles.end(), b.poles_.begin(), b.poles_.end());

  double maxc = 0.0;
  for (Complex c : num) maxc = std::max(maxc, std::abs(c));
  if (maxc == 0.0) return zero_function();

  std::vector<Complex> zeros = poly::roots(num);
  // Leading coefficient after trimming = new scale.
  size_t lead = num.size();
  while (lead > 0 && std::abs(num[lead - 1]) <= 1e-13 * maxc) --lead;
  Complex scale = num[lead - 1];

  cancel_pairs(zeros, poles, tol::cancel);
  return ComplexRational(std::move(zeros), std::move(poles), scale);
}

ComplexRational ComplexRational::sub(const ComplexRational& a,
                                     const ComplexRational& b, int max_degree) {
  return add(a, b.scaled(Complex(-1, 0)), max_degree);
}

bool ComplexRational::in_hinf(const CircularDomain& domain) const {
  for (Complex p : poles_) {
    const Location loc = locate(domain, p);
    if (loc.tag != RegionTag::InHole && loc.tag != RegionTag::OutsideOuter)
      return false;
  }
  return true;
}

std::vector<std::pair<Complex, int>> ComplexRational::zeros_in(
    const CircularDomain& domain) const {
  std::vector<std::pair<Complex, int>> out;
  for (Complex z : zeros_) {
    if (locate(domain, z).tag != RegionTag::Interior) continue;
    bool merged = false;
    for (auto& [zc, mult] : out) {
      if (std::abs(zc - z) <= tol::cancel) {
        ++mult;
        merged = true;
        break;
      }
    }
    if (!merged) out.emplace_back(z, 1);
  }
  return out;
}

namespace poly {

std::vector<Complex> from_roots(std::span<const Complex> roots, Complex scale) {
  std::vector<Complex> c{scale};
  for (Complex r : roots) {
    c.push_back(Complex(0, 0));
    for (size_t i = c.size() - 1; i > 0; --i) c[i] = c[i - 1] - r * c[i];
    c[0] *= -r;
  }
  return c;
}

std::vector<Complex> mul(std::span<const Complex> a, std::span<const Complex> b) {
  std::vector<Complex> c(a.size() + b.size() - 1, Complex(0, 0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

std::vector<Complex> add(std::span<const Complex> a, std::span<const Complex> b) {
  std::vector<Complex> c(std::max(a.size(), b.size()), Complex(0, 0));
  for (size_t i = 0; i < a.size(); ++i) c[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) c[i] += b[i];
  return c;
}

Complex eval(std::span<const Complex> coeffs, Complex z) {
  Complex v(0, 0);
  for (size_t i = coeffs.size(); i > 0; --i) v = v * z + coeffs[i - 1];
  return v;
}

std::vector<Complex> roots(std::span<const Complex> coeffs, double rel_trim) {
  double maxc = 0.0;
  for (Complex c : coeffs) maxc = std::max(maxc, std::abs(c));
  if (maxc == 0.0) return {};

  size_t hi = coeffs.size();
  while (hi > 0 && std::abs(coeffs[hi - 1]) <= rel_trim * maxc) --hi;
  size_t lo = 0;
  while (lo < hi && std::abs(coeffs[lo]) <= rel_trim * maxc) ++lo;

  std::vector<Complex> out;
  // Roots at the origin from trimmed low-order coefficients.
  out.assign(lo, Complex(0, 0));
  const size_t n = hi - lo;  // number of coefficients of the core polynomial
  if (n <= 1) return out;

  Eigen::MatrixXcd companion =
      Eigen::MatrixXcd::Zero(static_cast<long>(n - 1), static_cast<long>(n - 1));
  const Complex lead = coeffs[hi - 1];
  for (size_t i = 0; i + 1 < n; ++i) {
    if (i + 2 < n) companion(static_cast<long>(i + 1), static_cast<long>(i)) = 1.0;
    companion(static_cast<long>(i), static_cast<long>(n - 2)) =
        -coeffs[lo + i] / lead;
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success)
    fail_numerical("RootFindingFailure", "companion eigensolver did not converge");

  std::vector<Complex> core(coeffs.begin() + static_cast<long>(lo),
                            coeffs.begin() + static_cast<long>(hi));
  for (long i = 0; i < solver.eigenvalues().size(); ++i) {
    Complex r = solver.eigenvalues()(i);
    // A couple of Newton steps against the trimmed polynomial.
    for (int it = 0; it < 3; ++it) {
      Complex p(0, 0), dp(0, 0);
      for (size_t k = core.size(); k > 0; --k) {
        dp = dp * r + p;
        p = p * r + core[k - 1];
      }
      if (std::abs(dp) == 0.0) break;
      const Complex step = p / dp;
      if (!is_finite(step)) break;
      r -= step;
    }
    out.push_back(r);
  }
  std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return out;
}

}  // namespace poly

double sup_norm(const kernels::Evaluator& f, const CircularDomain& domain,
                int initial_samples, double rel_tol) {
  int m = std::max(initial_samples, 16);
  double prev = -1.0;
  constexpr int kMaxSamples = 1 << 17;
  double best = 0.0;
  while (m <= kMaxSamples) {
    best = 0.0;
    for (int j = 0; j < domain.connectivity(); ++j) {
      const Contour c = component_contour(domain, j, 0.0, m);
      const auto pts = c.points();
      const auto vals = kernels::map_eval(f, pts);
      for (Complex v : vals) best = std::max(best, std::abs(v));
    }
    if (prev >= 0.0 && std::abs(best - prev) <= rel_tol * (1.0 + best))
      return best;
    prev = best;
    m *= 2;
  }
  return best;
}

double sup_norm(const ComplexRational& f, const CircularDomain& domain,
                int initial_samples, double rel_tol) {
  if (f.is_zero()) return 0.0;
  for (Complex p : f.poles()) {
    const Location loc = locate(domain, p);
    if (loc.tag == RegionTag::OnBoundary)
      fail_validation("PoleOnBoundary", "pole sits on a component circle");
    if (loc.tag == RegionTag::Interior)
      fail_validation("PoleOnBoundary", "pole lies inside the domain");
  }
  return sup_norm(f.evaluator(), domain, initial_samples, rel_tol);
}

double symmetry_defect(const kernels::Evaluator& f, const CircularDomain& domain,
                       int samples_per_circle) {
  // Only points whose conjugate stays in the closure contribute; for a
  // conjugation-symmetric domain that is every point.
  const auto usable = [&](Complex z) {
    const RegionTag t = locate(domain, std::conj(z)).tag;
    return t == RegionTag::Interior || t == RegionTag::OnBoundary;
  };
  double defect = 0.0;
  for (int j = 0; j < domain.connectivity(); ++j) {
    const Contour c = component_contour(domain, j, 0.0, samples_per_circle);
    for (const Complex z : c.points()) {
      if (!usable(z)) continue;
      defect = std::max(defect, std::abs(std::conj(f(std::conj(z))) - f(z)));
    }
  }
  for (const Complex z : polar_grid(domain, 8, 16, 1e-3 * domain.outer().radius)) {
    if (!usable(z)) continue;
    defect = std::max(defect, std::abs(std::conj(f(std::conj(z))) - f(z)));
  }
  return defect;
}

}  // namespace circdom
