#include "circdom/corona.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "circdom/blaschke.hpp"
#include "circdom/errors.hpp"
#include "circdom/kernels.hpp"

namespace circdom {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool in_closure(const CircularDomain& domain, Complex z) {
  const RegionTag tag = locate(domain, z).tag;
  return tag == RegionTag::Interior || tag == RegionTag::OnBoundary;
}

std::vector<kernels::Evaluator> evaluators_of(const std::vector<ComplexRational>& fs) {
  std::vector<kernels::Evaluator> out;
  out.reserve(fs.size());
  for (const auto& f : fs) out.push_back(f.evaluator());
  return out;
}

void require_hinf(const std::vector<ComplexRational>& fs,
                  const CircularDomain& domain) {
  if (fs.empty()) fail_validation("InvalidFunction", "empty function list");
  for (const auto& f : fs) {
    for (Complex p : f.poles()) {
      const RegionTag tag = locate(domain, p).tag;
      if (tag == RegionTag::Interior)
        fail_validation("PoleInDomain", "pole inside the domain");
      if (tag == RegionTag::OnBoundary)
        fail_validation("PoleOnBoundary", "pole on the domain boundary");
    }
  }
}

double objective_at(const std::vector<kernels::Evaluator>& fs,
                    const CircularDomain& domain, Complex z) {
  if (!in_closure(domain, z)) return kInf;
  double s = 0.0;
  for (const auto& f : fs) s += std::abs(f(z));
  return s;
}

// Two dimensional Nelder-Mead restricted to the closed domain; points
// outside score infinite, so the simplex folds back inside.
std::pair<Complex, double> simplex_descent(
    const std::vector<kernels::Evaluator>& fs, const CircularDomain& domain,
    Complex start, double h) {
  struct Node {
    Complex p;
    double v;
  };
  auto value = [&](Complex z) { return objective_at(fs, domain, z); };
  std::array<Node, 3> s = {
      Node{start, value(start)},
      Node{start + Complex(h, 0), value(start + Complex(h, 0))},
      Node{start + Complex(0, h), value(start + Complex(0, h))}};
  auto by_value = [](const Node& a, const Node& b) { return a.v < b.v; };
  const double tiny = 1e-13 * domain.diameter();
  for (int it = 0; it < 160; ++it) {
    std::sort(s.begin(), s.end(), by_value);
    if (std::abs(s[2].p - s[0].p) < tiny) break;
    const Complex centroid = 0.5 * (s[0].p + s[1].p);
    const Complex refl = centroid + (centroid - s[2].p);
    const double fr = value(refl);
    if (fr < s[0].v) {
      const Complex ext = centroid + 2.0 * (centroid - s[2].p);
      const double fe = value(ext);
      s[2] = fe < fr ? Node{ext, fe} : Node{refl, fr};
    } else if (fr < s[1].v) {
      s[2] = Node{refl, fr};
    } else {
      const Complex con = centroid + 0.5 * (s[2].p - centroid);
      const double fc = value(con);
      if (fc < s[2].v) {
        s[2] = Node{con, fc};
      } else {
        s[1].p = s[0].p + 0.5 * (s[1].p - s[0].p);
        s[1].v = value(s[1].p);
        s[2].p = s[0].p + 0.5 * (s[2].p - s[0].p);
        s[2].v = value(s[2].p);
      }
    }
  }
  std::sort(s.begin(), s.end(), by_value);
  return {s[0].p, s[0].v};
}

std::vector<Complex> boundary_ring(const CircularDomain& domain, int samples,
                                   double offset = 0.0) {
  std::vector<Complex> pts;
  for (int j = 0; j < domain.connectivity(); ++j) {
    const auto ring = component_contour(domain, j, offset, samples).points();
    pts.insert(pts.end(), ring.begin(), ring.end());
  }
  return pts;
}

double sup_difference(const ComplexRational& a, const ComplexRational& b,
                      const std::vector<Complex>& pts) {
  const auto va = kernels::map_eval(a.evaluator(), pts);
  const auto vb = kernels::map_eval(b.evaluator(), pts);
  double m = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    m = std::max(m, std::abs(va[i] - vb[i]));
  return m;
}

// ---------------------------------------------------------------- Bezout --

// Basis at z: outer powers ((z-a0)/r0)^k for k = 0..N, then per hole
// (r_j/(z-a_j))^k for k = 1..N. One block of unknowns per function.
int basis_per_function(const CircularDomain& domain, int N) {
  return N + 1 + (domain.connectivity() - 1) * N;
}

void basis_row(const CircularDomain& domain, int N, Complex z,
               std::vector<Complex>& out) {
  out.clear();
  const Disk& outer = domain.outer();
  const Complex w0 = (z - outer.center) / outer.radius;
  Complex p = 1.0;
  for (int k = 0; k <= N; ++k) {
    out.push_back(p);
    p *= w0;
  }
  for (int j = 1; j < domain.connectivity(); ++j) {
    const Disk& hole = domain.component(j);
    const Complex wj = hole.radius / (z - hole.center);
    Complex q = wj;
    for (int k = 1; k <= N; ++k) {
      out.push_back(q);
      q *= wj;
    }
  }
}

std::vector<CauchyParts> parts_from_coeffs(const CircularDomain& domain, int N,
                                           const Eigen::VectorXcd& x,
                                           std::size_t nf) {
  const int per_function = basis_per_function(domain, N);
  std::vector<CauchyParts> out(nf);
  for (std::size_t i = 0; i < nf; ++i) {
    Eigen::Index at = static_cast<Eigen::Index>(i) * per_function;
    CauchyParts parts;
    ComponentSeries outer;
    outer.kind = BasisKind::OuterPower;
    outer.component = 0;
    outer.disk = domain.outer();
    for (int k = 0; k <= N; ++k) outer.coeffs.push_back(x[at++]);
    parts.parts.push_back(std::move(outer));
    for (int j = 1; j < domain.connectivity(); ++j) {
      ComponentSeries hole;
      hole.kind = BasisKind::HolePower;
      hole.component = j;
      hole.disk = domain.component(j);
      hole.coeffs.push_back(Complex(0, 0));
      for (int k = 1; k <= N; ++k) hole.coeffs.push_back(x[at++]);
      parts.parts.push_back(std::move(hole));
    }
    out[i] = std::move(parts);
  }
  return out;
}

std::vector<Complex> residual_grid(const CircularDomain& domain,
                                   int boundary_samples) {
  auto pts = boundary_ring(domain, boundary_samples);
  const auto interior = polar_grid(domain, 12, 32, 1e-3);
  pts.insert(pts.end(), interior.begin(), interior.end());
  return pts;
}

double bezout_residual(const std::vector<ComplexRational>& fs,
                       const std::vector<CauchyParts>& xs,
                       const std::vector<Complex>& pts) {
  std::vector<Complex> acc(pts.size(), Complex(0, 0));
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const auto fv = kernels::map_eval(fs[i].evaluator(), pts);
    const auto xv = kernels::map_eval(xs[i].evaluator(), pts);
    for (std::size_t m = 0; m < pts.size(); ++m) acc[m] += fv[m] * xv[m];
  }
  double res = 0.0;
  for (const Complex& v : acc) res = std::max(res, std::abs(v - 1.0));
  return res;
}

std::vector<double> sup_norms_of(const std::vector<CauchyParts>& xs,
                                 const std::vector<Complex>& pts) {
  std::vector<double> out;
  for (const auto& parts : xs) {
    const auto xv = kernels::map_eval(parts.evaluator(), pts);
    double nrm = 0.0;
    for (const Complex& v : xv) nrm = std::max(nrm, std::abs(v));
    out.push_back(nrm);
  }
  return out;
}

// ----------------------------------------------------------- zero shifts --

ComplexRational swap_factor(const Disk& disk, bool exterior, Complex from,
                            Complex to) {
  const ComplexRational b_new = blaschke_factor_rational(disk, exterior, to);
  const ComplexRational b_old = blaschke_factor_rational(disk, exterior, from);
  return ComplexRational::mul(b_new, b_old.inverse());
}

double random_angle(std::mt19937_64& rng) {
  return kTwoPi * static_cast<double>(rng() >> 11) * 0x1p-53;
}

// Direction pointing away from the nearest of the given points; random
// (seeded) when the distance degenerates to zero.
Complex away_direction(Complex w, const std::vector<Complex>& away_from,
                       std::mt19937_64& rng) {
  double best = kInf;
  Complex nearest = w;
  for (Complex z : away_from) {
    const double d = std::abs(w - z);
    if (d < best) {
      best = d;
      nearest = z;
    }
  }
  if (best == kInf || best < 1e-300) return std::polar(1.0, random_angle(rng));
  return (w - nearest) / best;
}

double min_distance(Complex w, const std::vector<Complex>& pts) {
  double best = kInf;
  for (Complex z : pts) best = std::min(best, std::abs(w - z));
  return best;
}

// Positive offset moves the ring into the region's interior.
std::vector<Complex> region_ring(const Region& region, int samples,
                                 double offset = 0.0) {
  const double r = region.inside ? region.disk.radius * (1.0 - offset)
                                 : region.disk.radius * (1.0 + offset);
  std::vector<Complex> pts;
  pts.reserve(static_cast<std::size_t>(samples));
  for (int m = 0; m < samples; ++m) {
    const double th = kTwoPi * m / samples;
    pts.push_back(region.disk.center + r * std::polar(1.0, th));
  }
  return pts;
}

}  // namespace

// ------------------------------------------------------------ lower bound --

LowerBound lower_bound(const std::vector<ComplexRational>& fs,
                       const CircularDomain& domain, const GridSpec& grid) {
  require_hinf(fs, domain);
  const auto evals = evaluators_of(fs);

  auto pts = polar_grid(domain, grid.radial, grid.angular, 0.0);
  // Zeros of the inputs are the natural candidate minima of the modulus
  // sum; exact common zeros then register as exactly zero.
  for (const auto& f : fs)
    for (Complex z : f.zeros())
      if (in_closure(domain, z)) pts.push_back(z);

  std::vector<double> vals(pts.size());
  kernels::modulus_sum(evals, pts, vals);

  std::vector<std::size_t> order(pts.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });

  LowerBound out;
  out.grid = grid;
  out.value = vals[order[0]];
  out.argmin = pts[order[0]];

  const double h = domain.outer().radius * kTwoPi / grid.angular;
  const std::size_t starts = std::min<std::size_t>(8, order.size());
  for (std::size_t s = 0; s < starts; ++s) {
    const auto [p, v] = simplex_descent(evals, domain, pts[order[s]], h);
    if (v < out.value) {
      out.value = v;
      out.argmin = p;
    }
  }
  return out;
}

// ----------------------------------------------------------------- Bezout --

UnimodularCertificate bezout_solve(const std::vector<ComplexRational>& fs,
                                   const CircularDomain& domain,
                                   const BezoutOptions& opts) {
  require_hinf(fs, domain);
  const LowerBound lb = lower_bound(fs, domain);
  if (lb.value <= tol::delta_min)
    fail_numerical("NotUnimodular",
                   "modulus sum lower bound " + std::to_string(lb.value) +
                       " is not bounded away from zero");

  const std::size_t nf = fs.size();

  std::vector<int> orders{0};
  for (int N = 1; N <= opts.max_basis; N *= 2) orders.push_back(N);

  for (int N : orders) {
    const int per_function = basis_per_function(domain, N);
    int samples = 64;
    while (samples < 4 * (N + 1)) samples *= 2;

    const auto pts = boundary_ring(domain, samples);
    const Eigen::Index rows = static_cast<Eigen::Index>(pts.size());
    const Eigen::Index cols = static_cast<Eigen::Index>(nf) * per_function;

    std::vector<std::vector<Complex>> fvals(nf);
    for (std::size_t i = 0; i < nf; ++i)
      fvals[i] = kernels::map_eval(fs[i].evaluator(), pts);

    // Ridge-regularized collocation, solved as the augmented least squares
    // system [A; sqrt(ridge) I] x ~ [1; 0].
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(rows + cols, cols);
    Eigen::VectorXcd b = Eigen::VectorXcd::Zero(rows + cols);
    std::vector<Complex> row;
    for (Eigen::Index m = 0; m < rows; ++m) {
      basis_row(domain, N, pts[static_cast<std::size_t>(m)], row);
      for (std::size_t i = 0; i < nf; ++i) {
        const Complex fv = fvals[i][static_cast<std::size_t>(m)];
        const Eigen::Index base = static_cast<Eigen::Index>(i) * per_function;
        for (int k = 0; k < per_function; ++k)
          A(m, base + k) = fv * row[static_cast<std::size_t>(k)];
      }
      b[m] = 1.0;
    }
    const double lam = std::sqrt(opts.ridge);
    for (Eigen::Index k = 0; k < cols; ++k) A(rows + k, k) = lam;

    const Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(A);
    Eigen::VectorXcd x = qr.solve(b);
    // The ridge keeps the factorization well posed, but when the true
    // solution has a large norm the penalty biases the fit above the
    // residual target. Re-solving against the remaining defect strips
    // that bias (iterated Tikhonov) at the cost of extra back-solves.
    for (int pass = 0; pass < 3; ++pass) {
      Eigen::VectorXcd r = b - A * x;
      if (r.head(rows).lpNorm<Eigen::Infinity>() <= 0.1 * tol::bezout) break;
      r.tail(cols).setZero();
      x += qr.solve(r);
    }
    auto xs = parts_from_coeffs(domain, N, x, nf);

    const auto check_pts = residual_grid(domain, 2 * samples);
    const double res = bezout_residual(fs, xs, check_pts);
    if (res <= tol::bezout) {
      UnimodularCertificate cert;
      cert.delta = lb.value;
      cert.bezout = std::move(xs);
      cert.residual = res;
      cert.basis_size = N;
      cert.collocation_samples = samples;
      cert.norms = sup_norms_of(cert.bezout, check_pts);
      return cert;
    }
  }
  fail_numerical("IllConditioned",
                 "Bezout residual stays above tolerance at the basis cap");
}

UnimodularCertificate symmetrize_bezout(const std::vector<ComplexRational>& fs,
                                        const UnimodularCertificate& cert,
                                        const CircularDomain& domain) {
  const auto sigma_opt = conjugate_component_map(domain);
  if (!sigma_opt)
    fail_validation("NotSymmetric", "domain is not symmetric about the real axis");
  const auto& sigma = *sigma_opt;
  for (const auto& f : fs) {
    const double scale = sup_norm(f, domain);
    if (symmetry_defect(f.evaluator(), domain) > tol::symmetry * (1.0 + scale))
      fail_validation("NotSymmetric", "input function is not conjugation-symmetric");
  }
  if (cert.bezout.size() != fs.size())
    fail_validation("InvalidFunction", "certificate does not match the function list");

  UnimodularCertificate out = cert;
  for (auto& parts : out.bezout) {
    const CauchyParts src = parts;
    for (int j = 0; j < domain.connectivity(); ++j) {
      const int sj = sigma[static_cast<std::size_t>(j)];
      const auto& own = src.parts[static_cast<std::size_t>(j)].coeffs;
      const auto& mirror = src.parts[static_cast<std::size_t>(sj)].coeffs;
      auto& dst = parts.parts[static_cast<std::size_t>(j)].coeffs;
      const std::size_t n = std::max(own.size(), mirror.size());
      dst.assign(n, Complex(0, 0));
      for (std::size_t k = 0; k < n; ++k) {
        const Complex a = k < own.size() ? own[k] : Complex(0, 0);
        const Complex b = k < mirror.size() ? mirror[k] : Complex(0, 0);
        dst[k] = 0.5 * (a + std::conj(b));
      }
    }
  }
  const auto check_pts = residual_grid(domain, 2 * cert.collocation_samples);
  out.residual = bezout_residual(fs, out.bezout, check_pts);
  out.norms = sup_norms_of(out.bezout, check_pts);
  return out;
}

// ------------------------------------------------------------------ fibers --

bool Region::contains(Complex z) const {
  const double d = std::abs(z - disk.center);
  return inside ? d < disk.radius : d > disk.radius;
}

double Region::boundary_distance(Complex z) const {
  return std::abs(std::abs(z - disk.center) - disk.radius);
}

FiberIntersection fiber_intersection(const ComplexRational& f1, const Region& r1,
                                     const ComplexRational& f2, const Region& r2) {
  if (f1.is_zero() || f2.is_zero())
    fail_validation("IdenticallyZero", "fiber analysis needs nonzero functions");

  // The removed closed disks (on the sphere) must be disjoint. Two inside
  // regions remove two disk complements, which always overlap.
  const double gap = std::abs(r1.disk.center - r2.disk.center);
  bool ok = false;
  if (!r1.inside && !r2.inside) ok = gap > r1.disk.radius + r2.disk.radius;
  if (r1.inside && !r2.inside) ok = gap + r2.disk.radius < r1.disk.radius;
  if (!r1.inside && r2.inside) ok = gap + r1.disk.radius < r2.disk.radius;
  if (!ok) fail_validation("HoleOverlap", "the removed disks are not disjoint");

  const double scale = std::max(1.0, gap + r1.disk.radius + r2.disk.radius);
  const double tol_c = tol::cancel * scale;

  FiberIntersection out;
  for (Complex z : f1.zeros()) {
    if (!r1.contains(z) || !r2.contains(z)) continue;
    if (r1.boundary_distance(z) <= tol_c || r2.boundary_distance(z) <= tol_c)
      continue;
    for (Complex w : f2.zeros()) {
      if (std::abs(z - w) > tol_c) continue;
      const Complex mid = 0.5 * (z + w);
      bool dup = false;
      for (Complex seen : out.common) dup = dup || std::abs(seen - mid) <= tol_c;
      if (!dup) out.common.push_back(mid);
    }
  }
  // Zeros of one function landing on the other region's circle where that
  // other function degenerates too.
  for (Complex w : f2.zeros()) {
    if (r1.boundary_distance(w) > tol_c) continue;
    if (min_distance(w, f1.zeros()) <= tol_c) out.on_first_boundary.push_back(w);
  }
  for (Complex z : f1.zeros()) {
    if (r2.boundary_distance(z) > tol_c) continue;
    if (min_distance(z, f2.zeros()) <= tol_c) out.on_second_boundary.push_back(z);
  }
  return out;
}

// ------------------------------------------------------- pair perturbation --

namespace {

double pair_min_probe(const ComplexRational& f, const ComplexRational& g,
                      const Region& region, const std::vector<Complex>& ring) {
  double best = kInf;
  auto probe = [&](Complex z) {
    best = std::min(best, std::abs(f(z)) + std::abs(g(z)));
  };
  for (Complex z : ring) probe(z);
  for (Complex z : f.zeros())
    if (region.contains(z)) probe(z);
  for (Complex z : g.zeros())
    if (region.contains(z)) probe(z);
  return best;
}

}  // namespace

PairPerturbation perturb_pair_simply_connected(const ComplexRational& f,
                                               const ComplexRational& g,
                                               const Region& region, double eps,
                                               std::uint64_t seed) {
  if (f.is_zero() || g.is_zero())
    fail_validation("IdenticallyZero",
                    "zero functions cannot be separated by zero shifts");
  if (eps <= 0.0) fail_validation("InvalidOffset", "epsilon must be positive");

  PairPerturbation out;
  out.f = f;
  out.g = g;

  std::vector<Complex> f_zeros;
  for (Complex z : f.zeros())
    if (region.contains(z)) f_zeros.push_back(z);

  // Snapshot of the conflicted zero values; each occurrence is shifted
  // once, anchored at its exact stored value so the swap cancels exactly.
  std::vector<Complex> conflicted;
  const double tau_pair = 1e-3 * 2.0 * region.disk.radius;
  for (Complex w : g.zeros())
    if (region.contains(w) && min_distance(w, f_zeros) < tau_pair)
      conflicted.push_back(w);

  const auto budget_ring = region_ring(region, 512);
  const auto probe_ring = region_ring(region, 512, 1e-3);
  if (conflicted.empty()) {
    out.pair_min = pair_min_probe(f, g, region, probe_ring);
    return out;
  }

  std::mt19937_64 rng(seed);
  const double budget = eps / (4.0 * static_cast<double>(conflicted.size()));
  const bool exterior = !region.inside;

  for (Complex w : conflicted) {
    const Complex dir = away_direction(w, f_zeros, rng);
    const double old_min = min_distance(w, f_zeros);
    double eta = std::min(tau_pair, 0.5 * region.boundary_distance(w));
    bool done = false;
    for (int t = 0; t < 40 && !done; ++t, eta *= 0.5) {
      const Complex target = w + eta * dir;
      if (!region.contains(target)) continue;
      if (min_distance(target, f_zeros) < std::max(old_min, 0.45 * eta)) continue;
      const ComplexRational g_next = ComplexRational::mul(
          out.g, swap_factor(region.disk, exterior, w, target));
      const double change = sup_difference(out.g, g_next, budget_ring);
      if (change > budget) continue;
      out.shifts.push_back(PairShift{w, target, change});
      out.g = g_next;
      done = true;
    }
    if (!done)
      fail_numerical("BudgetExceeded",
                     "cannot separate zeros within the requested budget");
  }
  out.pair_min = pair_min_probe(out.f, out.g, region, probe_ring);
  return out;
}

// ------------------------------------------------------ cross perturbation --

CrossResult cross_perturb(const std::vector<ComplexRational>& fs,
                          const std::vector<ComplexRational>& gs,
                          const CircularDomain& domain, double eps,
                          std::uint64_t seed) {
  const int n = domain.connectivity();
  if (fs.size() != static_cast<std::size_t>(n) || gs.size() != fs.size())
    fail_validation("InvalidFunction",
                    "need one function per component on each side");
  if (eps <= 0.0) fail_validation("InvalidOffset", "epsilon must be positive");
  for (const auto& h : fs)
    if (h.is_zero()) fail_validation("IdenticallyZero", "zero function in list");
  for (const auto& h : gs)
    if (h.is_zero()) fail_validation("IdenticallyZero", "zero function in list");

  std::vector<Region> regions;
  for (int j = 0; j < n; ++j)
    regions.push_back(Region{domain.component(j), j == 0});

  const double tau_pair = 1e-3 * domain.diameter();
  const double tol_exact = 1e-12 * domain.diameter();

  // Same-index pairs must already be separated on their own region.
  for (int j = 0; j < n; ++j)
    for (Complex z : fs[static_cast<std::size_t>(j)].zeros()) {
      if (!regions[static_cast<std::size_t>(j)].contains(z)) continue;
      if (min_distance(z, gs[static_cast<std::size_t>(j)].zeros()) <= tol_exact)
        fail_validation("NotUnimodular",
                        "component pair shares a zero before cross separation");
    }

  CrossResult out;
  out.fs = fs;
  out.gs = gs;

  auto in_both = [&](Complex z, int j, int k) {
    return regions[static_cast<std::size_t>(j)].contains(z) &&
           regions[static_cast<std::size_t>(k)].contains(z);
  };

  // Planned shift count for the budget split.
  std::size_t planned = 0;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      if (j == k) continue;
      for (Complex w : gs[static_cast<std::size_t>(k)].zeros()) {
        if (!in_both(w, j, k)) continue;
        for (Complex z : fs[static_cast<std::size_t>(j)].zeros())
          if (in_both(z, j, k) && std::abs(z - w) < tau_pair) {
            ++planned;
            break;
          }
      }
    }

  std::mt19937_64 rng(seed);
  const double budget =
      planned == 0 ? 0.0 : eps / (4.0 * static_cast<double>(planned));

  // The domain sits inside every component region, so its inset boundary
  // rings are valid probes for every pair.
  const std::vector<Complex> domain_probes = boundary_ring(domain, 128, 1e-3);

  auto pair_min = [&](int j, int k) {
    const auto& F = out.fs[static_cast<std::size_t>(j)];
    const auto& G = out.gs[static_cast<std::size_t>(k)];
    double best = kInf;
    auto probe = [&](Complex z) {
      if (!in_both(z, j, k)) return;
      best = std::min(best, std::abs(F(z)) + std::abs(G(z)));
    };
    for (Complex z : F.zeros()) probe(z);
    for (Complex z : G.zeros()) probe(z);
    for (Complex z : domain_probes) probe(z);
    for (Complex z : region_ring(regions[static_cast<std::size_t>(j)], 128, 1e-3))
      probe(z);
    for (Complex z : region_ring(regions[static_cast<std::size_t>(k)], 128, 1e-3))
      probe(z);
    return best == kInf ? 0.0 : best;
  };

  // Shifts are grouped by the g component. A pair's minimum is recorded
  // once its g side is fully processed; nothing later touches that side,
  // so the recorded margins hold exactly, not merely above half.
  std::vector<std::pair<std::pair<int, int>, double>> recorded;
  for (int k = 0; k < n; ++k) {
    const Region& region_k = regions[static_cast<std::size_t>(k)];
    const auto budget_ring = region_ring(region_k, 512);
    for (int j = 0; j < n; ++j) {
      if (j == k) continue;
      std::vector<Complex> f_zeros;
      for (Complex z : out.fs[static_cast<std::size_t>(j)].zeros())
        if (in_both(z, j, k)) f_zeros.push_back(z);
      if (f_zeros.empty()) continue;

      // Snapshot the g zeros for this pass; shifts rebuild the list.
      const std::vector<Complex> snapshot =
          out.gs[static_cast<std::size_t>(k)].zeros();
      for (Complex w : snapshot) {
        if (!in_both(w, j, k)) continue;
        if (min_distance(w, f_zeros) >= tau_pair) continue;

        const double before = pair_min(j, k);
        const Complex dir = away_direction(w, f_zeros, rng);
        const double old_min = min_distance(w, f_zeros);
        double eta = std::min(tau_pair, 0.5 * region_k.boundary_distance(w));
        bool done = false;
        for (int t = 0; t < 40 && !done; ++t, eta *= 0.5) {
          const Complex target = w + eta * dir;
          if (!in_both(target, j, k)) continue;
          if (min_distance(target, f_zeros) < std::max(old_min, 0.45 * eta))
            continue;
          const ComplexRational g_next = ComplexRational::mul(
              out.gs[static_cast<std::size_t>(k)],
              swap_factor(region_k.disk, !region_k.inside, w, target));
          const double change = sup_difference(
              out.gs[static_cast<std::size_t>(k)], g_next, budget_ring);
          if (change > budget) continue;
          out.gs[static_cast<std::size_t>(k)] = g_next;
          const double after = pair_min(j, k);
          out.log.push_back(CrossShift{j, k, w, target, change, before, after});
          done = true;
        }
        if (!done)
          fail_numerical("BudgetExceeded",
                         "cannot separate cross pair within the requested budget");
      }
    }
    for (int j = 0; j < n; ++j)
      if (j != k) recorded.push_back({{j, k}, pair_min(j, k)});
  }

  std::sort(recorded.begin(), recorded.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [key, v] : recorded) out.margins.push_back(v);
  return out;
}

// -------------------------------------------------------------- pipeline --

namespace {

// Zero constellation of one side of the pair: positions grouped by
// component, each anchored at the exact value stored in the rational's
// zero list so swap factors cancel exactly.
struct Constellation {
  std::vector<std::vector<Complex>> by_component;

  std::vector<Complex> flat() const {
    std::vector<Complex> all;
    for (const auto& c : by_component) all.insert(all.end(), c.begin(), c.end());
    return all;
  }
};

Constellation anchored_constellation(const Factorization& fact,
                                     const ComplexRational& fn,
                                     const CircularDomain& domain) {
  Constellation c;
  c.by_component.resize(static_cast<std::size_t>(domain.connectivity()));
  std::vector<Complex> pool = fn.zeros();
  std::vector<bool> used(pool.size(), false);
  for (std::size_t j = 0; j < c.by_component.size(); ++j) {
    for (Complex w : fact.factors[j].blaschke.zeros) {
      std::size_t best = pool.size();
      double best_d = 1e-6 * std::max(1.0, domain.diameter());
      for (std::size_t i = 0; i < pool.size(); ++i) {
        if (used[i]) continue;
        const double d = std::abs(pool[i] - w);
        if (d < best_d) {
          best_d = d;
          best = i;
        }
      }
      if (best == pool.size())
        fail_numerical("RootFindingFailure",
                       "factor zero does not match any stored zero");
      used[best] = true;
      c.by_component[j].push_back(pool[best]);
    }
  }
  return c;
}

struct PipelinePlan {
  const CircularDomain& domain;
  std::vector<Complex> f_all;  // stationary zero set
  bool symmetric = false;
  std::vector<int> sigma;
  double tau_pair = 0.0;
  double pair_tol = 0.0;  // conjugate-pair matching tolerance
  double eps = 0.0;

  PipelinePlan(const CircularDomain& d, const Constellation& f, bool sym,
               std::vector<int> sg, double e)
      : domain(d),
        f_all(f.flat()),
        symmetric(sym),
        sigma(std::move(sg)),
        tau_pair(1e-3 * d.diameter()),
        pair_tol(1e-9 * std::max(1.0, d.diameter())),
        eps(e) {}
};

struct AttemptResult {
  ComplexRational g;
  std::vector<ZeroShift> shifts;
};

// One full pass over g's zero constellation at a given shift scale. Shifts
// are applied as exact rational swap factors; in symmetric mode complex
// zeros move in conjugate pairs and near-real zeros move along the axis.
AttemptResult run_attempt(const PipelinePlan& plan, const ComplexRational& g0,
                          const Constellation& gz0, double scale,
                          std::uint64_t seed) {
  AttemptResult out;
  out.g = g0;
  Constellation gz = gz0;
  std::mt19937_64 rng(seed);

  const auto ring = boundary_ring(plan.domain, 512);
  const double eta_floor = 1e-13 * plan.domain.diameter();

  std::size_t planned = 0;
  for (const auto& comp : gz.by_component)
    for (Complex w : comp)
      if (min_distance(w, plan.f_all) < plan.tau_pair) ++planned;
  if (planned == 0) return out;
  const double budget = plan.eps / (4.0 * static_cast<double>(planned));

  const int n = plan.domain.connectivity();
  std::vector<std::vector<bool>> handled(gz.by_component.size());
  for (std::size_t j = 0; j < gz.by_component.size(); ++j)
    handled[j].assign(gz.by_component[j].size(), false);

  auto apply_swap = [&](int comp, std::size_t idx, Complex target,
                        ComplexRational& g_acc) {
    const Complex from = gz.by_component[static_cast<std::size_t>(comp)][idx];
    const Disk& disk = plan.domain.component(comp);
    g_acc = ComplexRational::mul(g_acc, swap_factor(disk, comp != 0, from, target));
    gz.by_component[static_cast<std::size_t>(comp)][idx] = target;
  };

  for (int k = 0; k < n; ++k) {
    auto& slots = gz.by_component[static_cast<std::size_t>(k)];
    for (std::size_t idx = 0; idx < slots.size(); ++idx) {
      if (handled[static_cast<std::size_t>(k)][idx]) continue;
      const Complex w = slots[idx];
      if (min_distance(w, plan.f_all) >= plan.tau_pair) continue;

      const bool on_axis = plan.symmetric && std::abs(w.imag()) <= plan.pair_tol;
      const bool paired = plan.symmetric && !on_axis;
      int pk = k;
      std::size_t pidx = idx;
      if (paired) {
        pk = plan.sigma[static_cast<std::size_t>(k)];
        const auto& pslots = gz.by_component[static_cast<std::size_t>(pk)];
        bool found = false;
        for (std::size_t i = 0; i < pslots.size(); ++i) {
          if ((pk == k && i == idx) || handled[static_cast<std::size_t>(pk)][i])
            continue;
          if (std::abs(pslots[i] - std::conj(w)) <= plan.pair_tol) {
            pidx = i;
            found = true;
            break;
          }
        }
        if (!found)
          fail_validation("NotSymmetric",
                          "zero has no conjugate partner to move with");
      }

      Complex dir = away_direction(w, plan.f_all, rng);
      if (on_axis) {
        double s = dir.real();
        if (s == 0.0) s = (rng() & 1) ? 1.0 : -1.0;
        dir = Complex(s > 0 ? 1.0 : -1.0, 0.0);
      }

      const double old_min = min_distance(w, plan.f_all);
      const double bdist = locate(plan.domain, w).boundary_distance;
      double eta = scale * std::min(plan.tau_pair, 0.5 * bdist);
      bool done = false;
      for (; eta > eta_floor && !done; eta *= 0.5) {
        const Complex target = w + eta * dir;
        if (locate(plan.domain, target).tag != RegionTag::Interior) continue;
        if (min_distance(target, plan.f_all) < std::max(old_min, 0.45 * eta))
          continue;

        ComplexRational g_next = out.g;
        const Complex partner_from =
            paired ? gz.by_component[static_cast<std::size_t>(pk)][pidx]
                   : Complex(0, 0);
        apply_swap(k, idx, target, g_next);
        Complex ptarget(0, 0);
        if (paired) {
          ptarget = std::conj(target);
          apply_swap(pk, pidx, ptarget, g_next);
        }
        const double change = sup_difference(out.g, g_next, ring);
        const double allowance = paired ? 2.0 * budget : budget;
        if (change > allowance) {
          gz.by_component[static_cast<std::size_t>(k)][idx] = w;
          if (paired)
            gz.by_component[static_cast<std::size_t>(pk)][pidx] = partner_from;
          continue;
        }
        out.g = g_next;
        out.shifts.push_back(
            ZeroShift{k, w, target, paired ? 0.5 * change : change});
        handled[static_cast<std::size_t>(k)][idx] = true;
        if (paired) {
          out.shifts.push_back(
              ZeroShift{pk, partner_from, ptarget, 0.5 * change});
          handled[static_cast<std::size_t>(pk)][pidx] = true;
        }
        done = true;
      }
      if (!done)
        fail_numerical("BudgetExceeded",
                       "cannot separate zeros within the shift budget");
    }
  }
  return out;
}

}  // namespace

PerturbationResult approximate_by_unimodular(const ComplexRational& f,
                                             const ComplexRational& g,
                                             const CircularDomain& domain,
                                             const PerturbOptions& opts) {
  if (opts.epsilon <= 0.0)
    fail_validation("InvalidOffset", "epsilon must be positive");

  PerturbationResult result;
  result.seed = opts.seed;

  // Identically-zero inputs are replaced by a small constant up front.
  const ComplexRational F =
      f.is_zero() ? ComplexRational::constant(Complex(opts.epsilon / 4, 0)) : f;
  const ComplexRational G =
      g.is_zero() ? ComplexRational::constant(Complex(opts.epsilon / 4, 0)) : g;
  require_hinf({F, G}, domain);

  if (opts.symmetric) {
    if (!conjugate_component_map(domain))
      fail_validation("NotSymmetric", "domain is not symmetric about the real axis");
    for (const auto* h : {&F, &G}) {
      const double scale = sup_norm(*h, domain);
      if (symmetry_defect(h->evaluator(), domain) > tol::symmetry * (1.0 + scale))
        fail_validation("NotSymmetric",
                        "input function is not conjugation-symmetric");
    }
  }

  const auto boundary = boundary_ring(domain, 1024);
  auto finish = [&](ComplexRational g_final, std::vector<ZeroShift> shifts) {
    result.f = F;
    result.g = std::move(g_final);
    result.shifts = std::move(shifts);
    result.distance = sup_difference(f, result.f, boundary) +
                      sup_difference(g, result.g, boundary);
    result.delta_out = lower_bound({result.f, result.g}, domain).value;
    result.certificate = bezout_solve({result.f, result.g}, domain, opts.bezout);
    if (opts.symmetric)
      result.certificate =
          symmetrize_bezout({result.f, result.g}, result.certificate, domain);
    return result;
  };

  // Already unimodular pairs pass through untouched.
  const LowerBound lb0 = lower_bound({F, G}, domain);
  if (lb0.value > tol::delta_min) return finish(G, {});

  Factorization fact_f = multiplicative_factorize(F, domain);
  Factorization fact_g = multiplicative_factorize(G, domain);
  if (opts.symmetric) {
    fact_f = symmetrize_factorization(fact_f, F, domain);
    fact_g = symmetrize_factorization(fact_g, G, domain);
  }

  const Constellation fz = anchored_constellation(fact_f, F, domain);
  const Constellation gz = anchored_constellation(fact_g, G, domain);

  std::vector<int> sigma;
  if (opts.symmetric) sigma = *conjugate_component_map(domain);
  const PipelinePlan plan(domain, fz, opts.symmetric, sigma, opts.epsilon);

  // Retry ladder: the whole shift plan reruns at halved scales when a
  // budget check fails anywhere.
  for (int attempt = 0; attempt <= 8; ++attempt) {
    const double scale = std::pow(0.5, attempt);
    try {
      AttemptResult got = run_attempt(plan, G, gz, scale, opts.seed);
      const double dist = sup_difference(f, F, boundary) +
                          sup_difference(g, got.g, boundary);
      if (dist > opts.epsilon)
        fail_numerical("BudgetExceeded", "assembled distance exceeds epsilon");
      return finish(std::move(got.g), std::move(got.shifts));
    } catch (const Error& e) {
      if (e.name() != "BudgetExceeded" || attempt == 8) throw;
    }
  }
  fail_numerical("BudgetExceeded", "all retry attempts exhausted");
}

}  // namespace circdom
