#include "circdom/cauchy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "circdom/errors.hpp"

namespace circdom {

namespace {

double sample_sup(std::span<const Complex> samples) {
  double s = 0.0;
  for (Complex v : samples) {
    if (!is_finite(v))
      fail_numerical("NonFiniteSample", "inf or nan on a sampling contour");
    s = std::max(s, std::abs(v));
  }
  return s;
}

// Reads bins -> normalized-basis coefficients for one component.
std::vector<Complex> read_coeffs(std::span<const Complex> samples, bool is_outer,
                                 double offset, int ncoeff) {
  if (is_outer) {
    std::vector<Complex> c =
        kernels::fourier_bins(samples, +1, ncoeff);
    const double g = 1.0 / (1.0 - offset);
    double f = 1.0;
    for (Complex& ck : c) {
      ck *= f;
      f *= g;
    }
    return c;
  }
  std::vector<Complex> c = kernels::fourier_bins(samples, -1, ncoeff);
  c[0] = Complex(0, 0);  // constants belong to the outer part
  const double g = 1.0 + offset;
  double f = 1.0;
  for (size_t p = 1; p < c.size(); ++p) {
    f *= g;
    c[p] *= f;
  }
  return c;
}

double tail_sup(std::span<const Complex> coeffs, int window) {
  double t = 0.0;
  const size_t n = coeffs.size();
  const size_t w = std::min<size_t>(static_cast<size_t>(std::max(window, 1)), n);
  for (size_t i = n - w; i < n; ++i) t = std::max(t, std::abs(coeffs[i]));
  return t;
}

// Drops trailing coefficients at or below the noise floor; keeps at least one.
void trim_tail(std::vector<Complex>& coeffs, double floor_abs) {
  size_t n = coeffs.size();
  while (n > 1 && std::abs(coeffs[n - 1]) <= floor_abs) --n;
  coeffs.resize(n);
}

}  // namespace

CauchyParts cauchy_decompose(const ComponentSampler& sampler,
                             const CircularDomain& domain,
                             const DecomposeOptions& opts) {
  if (opts.offset <= 0.0 || opts.offset >= 0.5)
    fail_validation("InvalidOffset", "contour offset must be in (0, 0.5)");
  int m0 = 64;
  while (m0 < opts.initial_samples) m0 *= 2;
  const int m_cap = 4 * std::max(opts.max_coeffs, m0);
  const int n_parts = domain.connectivity();

  // Initial pass fixes the global sample scale so near-zero components can
  // converge against it instead of chasing their own roundoff noise.
  std::vector<std::vector<Complex>> initial(static_cast<size_t>(n_parts));
  double scale = 0.0;
  for (int j = 0; j < n_parts; ++j) {
    initial[static_cast<size_t>(j)] = sampler(j, m0);
    if (static_cast<int>(initial[static_cast<size_t>(j)].size()) != m0)
      fail_numerical("NonFiniteSample", "sampler returned a short sample vector");
    scale = std::max(scale, sample_sup(initial[static_cast<size_t>(j)]));
  }

  CauchyParts out;
  out.parts.resize(static_cast<size_t>(n_parts));
  for (int j = 0; j < n_parts; ++j) {
    ComponentSeries& part = out.parts[static_cast<size_t>(j)];
    part.kind = j == 0 ? BasisKind::OuterPower : BasisKind::HolePower;
    part.component = j;
    part.disk = domain.component(j);
    if (scale == 0.0) {
      part.coeffs = {Complex(0, 0)};
      continue;
    }

    int m = m0;
    std::vector<Complex> samples = initial[static_cast<size_t>(j)];
    for (;;) {
      const int ncoeff = std::min(opts.max_coeffs, m / 2);
      part.coeffs = read_coeffs(samples, j == 0, opts.offset, ncoeff);
      if (tail_sup(part.coeffs, opts.tail_window) <= opts.tail_tol * scale) break;
      m *= 2;
      if (m > m_cap) {
        std::ostringstream msg;
        msg << "component " << j << " coefficients still "
            << tail_sup(part.coeffs, opts.tail_window) / scale
            << " of scale at " << ncoeff << " terms";
        fail_numerical("TruncationFailure", msg.str());
      }
      samples = sampler(j, m);
      scale = std::max(scale, sample_sup(samples));
    }
    trim_tail(part.coeffs, opts.tail_tol * scale);
  }
  return out;
}

CauchyParts cauchy_decompose(const kernels::Evaluator& f,
                             const CircularDomain& domain,
                             const DecomposeOptions& opts) {
  const ComponentSampler sampler = [&](int j, int count) {
    const Contour c = component_contour(domain, j, opts.offset, count);
    return kernels::map_eval(f, c.points());
  };
  return cauchy_decompose(sampler, domain, opts);
}

CauchyParts cauchy_decompose(const ComplexRational& f,
                             const CircularDomain& domain,
                             const DecomposeOptions& opts) {
  if (!f.in_hinf(domain))
    fail_validation("PoleInDomain",
                    "function has a pole in the closed domain");
  for (Complex p : f.poles()) {
    for (int j = 0; j < domain.connectivity(); ++j) {
      const Disk& d = domain.component(j);
      const double rho =
          j == 0 ? d.radius * (1.0 - opts.offset) : d.radius * (1.0 + opts.offset);
      if (std::abs(std::abs(p - d.center) - rho) <= tol::boundary * d.radius)
        fail_numerical("PoleOnContour",
                       "pole sits on a sampling contour; change the offset");
    }
  }
  return cauchy_decompose(f.evaluator(), domain, opts);
}

BoundedDecomposition decompose_bounded_above(const BoundarySamples& samples,
                                             const CircularDomain& domain,
                                             const DecomposeOptions& opts) {
  if (static_cast<int>(samples.samples.size()) != domain.connectivity())
    fail_validation("InvalidSamples", "one sample array per component required");
  const int m = samples.count;
  if (m < 16 || (m & (m - 1)) != 0)
    fail_validation("InvalidSamples", "sample count must be a power of two >= 16");
  if (samples.offset <= 0.0 || samples.offset >= 0.5)
    fail_validation("InvalidOffset", "contour offset must be in (0, 0.5)");

  double scale = 0.0;
  for (const auto& s : samples.samples) {
    if (static_cast<int>(s.size()) != m)
      fail_validation("InvalidSamples", "sample arrays must share one count");
    scale = std::max(scale, sample_sup(s));
  }

  BoundedDecomposition out;
  out.parts.parts.resize(samples.samples.size());
  for (int j = 0; j < domain.connectivity(); ++j) {
    ComponentSeries& part = out.parts.parts[static_cast<size_t>(j)];
    part.kind = j == 0 ? BasisKind::OuterPower : BasisKind::HolePower;
    part.component = j;
    part.disk = domain.component(j);
    if (scale == 0.0) {
      part.coeffs = {Complex(0, 0)};
      continue;
    }
    const int ncoeff = std::min(opts.max_coeffs, m / 2);
    part.coeffs = read_coeffs(samples.samples[static_cast<size_t>(j)], j == 0,
                              samples.offset, ncoeff);
    if (tail_sup(part.coeffs, opts.tail_window) > opts.tail_tol * scale) {
      std::ostringstream msg;
      msg << "component " << j << " tail still "
          << tail_sup(part.coeffs, opts.tail_window) / scale << " of scale at "
          << ncoeff << " terms; supply more samples";
      fail_numerical("TruncationFailure", msg.str());
    }
    trim_tail(part.coeffs, opts.tail_tol * scale);
  }

  out.max_real.assign(out.parts.parts.size(),
                      -std::numeric_limits<double>::infinity());
  for (size_t jp = 0; jp < out.parts.parts.size(); ++jp) {
    const auto ev = out.parts.parts[jp].evaluator();
    for (int j = 0; j < domain.connectivity(); ++j) {
      const Contour c = component_contour(domain, j, 0.0, m);
      for (Complex v : kernels::map_eval(ev, c.points()))
        out.max_real[jp] = std::max(out.max_real[jp], v.real());
    }
  }
  return out;
}

double decompose_residual(const CauchyParts& parts, const kernels::Evaluator& f,
                          const CircularDomain& domain, int samples) {
  int m = 16;
  while (m < samples) m *= 2;
  double err = 0.0, scale = 1.0;
  for (size_t j = 0; j < parts.parts.size(); ++j) {
    const Contour c = component_contour(domain, static_cast<int>(j), 0.0, m);
    const auto pts = c.points();
    const auto fv = kernels::map_eval(f, pts);
    const auto pv = kernels::map_eval(parts.evaluator(), pts);
    for (int i = 0; i < m; ++i) {
      err = std::max(err, std::abs(fv[static_cast<size_t>(i)] -
                                   pv[static_cast<size_t>(i)]));
      scale = std::max(scale, std::abs(fv[static_cast<size_t>(i)]));
    }
  }
  return err / scale;
}

}  // namespace circdom
