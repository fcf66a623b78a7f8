#include "circdom/series.hpp"

#include <algorithm>
#include <cmath>

#include "circdom/errors.hpp"

namespace circdom {

Complex ComponentSeries::eval(Complex z) const {
  if (coeffs.empty()) return Complex(0, 0);
  Complex w;
  if (kind == BasisKind::OuterPower) {
    w = (z - disk.center) / disk.radius;
  } else {
    const Complex d = z - disk.center;
    if (std::abs(d) == 0.0)
      fail_validation("EvalAtPole", "hole-basis series evaluated at its center");
    w = disk.radius / d;
  }
  Complex v(0, 0);
  for (size_t i = coeffs.size(); i > 0; --i) v = v * w + coeffs[i - 1];
  return v;
}

kernels::Evaluator ComponentSeries::evaluator() const {
  return [s = *this](Complex z) { return s.eval(z); };
}

double ComponentSeries::tail_ratio(int window) const {
  double all = 0.0, tail = 0.0;
  const size_t n = coeffs.size();
  const size_t w = std::min<size_t>(static_cast<size_t>(std::max(window, 1)), n);
  for (size_t i = 0; i < n; ++i) {
    const double m = std::abs(coeffs[i]);
    all = std::max(all, m);
    if (i >= n - w) tail = std::max(tail, m);
  }
  if (all == 0.0) return 0.0;
  return tail / all;
}

ComponentSeries ComponentSeries::conjugated_onto(const Disk& image_disk,
                                                 int image_component) const {
  // z -> conj(s(conj z)) maps a series on disk D(a, r) to one on D(conj a, r)
  // with conjugated coefficients; both basis kinds transform the same way
  // because conj((z - a)/r) = (conj z - conj a)/r.
  ComponentSeries out;
  out.kind = kind;
  out.component = image_component;
  out.disk = image_disk;
  out.coeffs.reserve(coeffs.size());
  for (Complex c : coeffs) out.coeffs.push_back(std::conj(c));
  return out;
}

Complex CauchyParts::eval(Complex z) const {
  Complex v(0, 0);
  for (const ComponentSeries& p : parts) v += p.eval(z);
  return v;
}

kernels::Evaluator CauchyParts::evaluator() const {
  return [c = *this](Complex z) { return c.eval(z); };
}

BoundarySamples sample_boundary(const kernels::Evaluator& f,
                                const CircularDomain& domain, double offset,
                                int count) {
  BoundarySamples out;
  out.offset = offset;
  out.count = count;
  out.samples.resize(static_cast<size_t>(domain.connectivity()));
  for (int j = 0; j < domain.connectivity(); ++j) {
    const Contour c = component_contour(domain, j, offset, count);
    out.samples[static_cast<size_t>(j)] = kernels::map_eval(f, c.points());
  }
  return out;
}

}  // namespace circdom
