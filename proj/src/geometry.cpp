#include "circdom/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "circdom/errors.hpp"

namespace circdom {

bool operator==(const Disk& a, const Disk& b) {
  return a.center == b.center && a.radius == b.radius;
}

std::vector<DomainViolation> CircularDomain::check(
    const Disk& outer, const std::vector<Disk>& holes) {
  std::vector<DomainViolation> out;
  auto bad_disk = [](const Disk& d) {
    return !(d.radius > 0.0) || !is_finite(d.center) || !std::isfinite(d.radius);
  };
  if (bad_disk(outer)) {
    out.push_back({"InvalidDisk", 0, -1, "outer disk needs finite center and radius > 0"});
    return out;
  }
  const int n = static_cast<int>(holes.size());
  for (int i = 0; i < n; ++i) {
    const Disk& h = holes[i];
    const int ci = i + 1;
    if (bad_disk(h)) {
      out.push_back({"InvalidDisk", ci, -1, "hole needs finite center and radius > 0"});
      continue;
    }
    const double d0 = std::abs(h.center - outer.center);
    if (d0 >= outer.radius) {
      out.push_back({"HoleOutsideOuter", ci, 0, "hole center not inside the outer disk"});
    } else if (d0 + h.radius >= outer.radius) {
      out.push_back({"HoleTouchesOuter", ci, 0, "hole closure reaches the outer circle"});
    }
    for (int k = i + 1; k < n; ++k) {
      if (bad_disk(holes[k])) continue;
      if (std::abs(h.center - holes[k].center) <= h.radius + holes[k].radius) {
        out.push_back({"HoleOverlap", ci, k + 1, "hole closures intersect"});
      }
    }
  }
  return out;
}

CircularDomain CircularDomain::validate(const Disk& outer, std::vector<Disk> holes) {
  auto violations = check(outer, holes);
  if (!violations.empty()) {
    std::ostringstream msg;
    for (size_t i = 0; i < violations.size(); ++i) {
      if (i) msg << "; ";
      msg << violations[i].name << "(disk " << violations[i].first;
      if (violations[i].second >= 0) msg << ", disk " << violations[i].second;
      msg << "): " << violations[i].detail;
    }
    fail_validation(violations.front().name, msg.str());
  }
  return CircularDomain(outer, std::move(holes));
}

const Disk& CircularDomain::component(int j) const {
  if (j == 0) return outer_;
  return holes_.at(static_cast<size_t>(j - 1));
}

CircularDomain annulus(double r_inner, double r_outer) {
  return CircularDomain::validate({Complex(0, 0), r_outer},
                                  {{Complex(0, 0), r_inner}});
}

Location locate(const CircularDomain& domain, Complex z, double boundary_tol) {
  const double tau = boundary_tol * domain.outer().radius;
  const int n = domain.connectivity();

  double best = std::numeric_limits<double>::infinity();
  int best_comp = 0;
  for (int j = 0; j < n; ++j) {
    const double d = std::abs(domain.component(j).circle_distance(z));
    if (d < best) {
      best = d;
      best_comp = j;
    }
  }

  Location loc;
  loc.boundary_distance = best;
  if (best <= tau) {
    loc.tag = RegionTag::OnBoundary;
    loc.component = best_comp;
    return loc;
  }
  if (domain.outer().circle_distance(z) > 0.0) {
    loc.tag = RegionTag::OutsideOuter;
    loc.component = 0;
    return loc;
  }
  for (int j = 1; j < n; ++j) {
    if (domain.component(j).circle_distance(z) < 0.0) {
      loc.tag = RegionTag::InHole;
      loc.component = j;
      return loc;
    }
  }
  loc.tag = RegionTag::Interior;
  return loc;
}

bool is_real_symmetric(const CircularDomain& domain, double rel_tol) {
  return conjugate_component_map(domain, rel_tol).has_value();
}

CircularDomain conjugate(const CircularDomain& domain) {
  Disk outer{std::conj(domain.outer().center), domain.outer().radius};
  std::vector<Disk> holes;
  holes.reserve(domain.holes().size());
  for (const Disk& h : domain.holes())
    holes.push_back({std::conj(h.center), h.radius});
  return CircularDomain::validate(outer, std::move(holes));
}

std::optional<std::vector<int>> conjugate_component_map(
    const CircularDomain& domain, double rel_tol) {
  const double tau = rel_tol * domain.outer().radius;
  if (std::abs(domain.outer().center.imag()) > tau) return std::nullopt;

  const int n = domain.connectivity();
  std::vector<int> map(static_cast<size_t>(n), -1);
  map[0] = 0;
  for (int j = 1; j < n; ++j) {
    if (map[j] >= 0) continue;
    const Disk& h = domain.component(j);
    const Complex want = std::conj(h.center);
    int partner = -1;
    for (int k = 1; k < n; ++k) {
      if (map[k] >= 0 && map[k] != k) continue;
      const Disk& c = domain.component(k);
      if (std::abs(c.center - want) <= tau &&
          std::abs(c.radius - h.radius) <= tau) {
        partner = k;
        break;
      }
    }
    if (partner < 0) return std::nullopt;
    map[j] = partner;
    map[partner] = j;
  }
  return map;
}

std::vector<Complex> Contour::points() const {
  std::vector<Complex> pts(static_cast<size_t>(samples));
  const double rho = effective_radius();
  for (int k = 0; k < samples; ++k) {
    const double theta = kTwoPi * k / samples;
    pts[static_cast<size_t>(k)] = disk.center + rho * std::polar(1.0, theta);
  }
  return pts;
}

Contour component_contour(const CircularDomain& domain, int j, double offset,
                          int samples) {
  if (samples < 16 || (samples & (samples - 1)) != 0)
    fail_validation("InvalidContour", "sample count must be a power of two >= 16");
  if (offset < 0.0 || offset >= 0.5)
    fail_validation("InvalidContour", "offset factor out of range [0, 0.5)");
  Contour c;
  c.disk = domain.component(j);
  c.offset = offset;
  c.samples = samples;
  c.inward = (j == 0);
  c.orientation = (j == 0) ? +1 : -1;
  if (offset > 0.0) {
    // The offset circle has to stay strictly inside the domain.
    const double rho = c.effective_radius();
    if (j == 0) {
      for (const Disk& h : domain.holes())
        if (std::abs(h.center - domain.outer().center) + h.radius >= rho)
          fail_validation("InvalidContour", "offset outer circle meets a hole");
    } else {
      const Disk& h = domain.component(j);
      if (std::abs(h.center - domain.outer().center) + rho >= domain.outer().radius)
        fail_validation("InvalidContour", "offset hole circle meets the outer circle");
      for (int k = 1; k < domain.connectivity(); ++k) {
        if (k == j) continue;
        const Disk& other = domain.component(k);
        if (std::abs(h.center - other.center) <= rho + other.radius)
          fail_validation("InvalidContour", "offset hole circle meets another hole");
      }
    }
  }
  return c;
}

std::vector<Complex> polar_grid(const CircularDomain& domain, int radial,
                                int angular, double inset) {
  std::vector<Complex> pts;
  pts.reserve(static_cast<size_t>(radial) * static_cast<size_t>(angular));
  const double r0 = domain.outer().radius;
  auto keep = [&](Complex z) {
    const Location loc = locate(domain, z);
    if (loc.tag == RegionTag::OutsideOuter || loc.tag == RegionTag::InHole)
      return false;
    return inset <= 0.0 || loc.boundary_distance >= inset;
  };
  // Rings around the outer center, from the center out to the outer circle.
  for (int i = 0; i < radial; ++i) {
    const double r = r0 * (radial == 1 ? 1.0 : double(i) / (radial - 1));
    for (int k = 0; k < angular; ++k) {
      const Complex z =
          domain.outer().center + r * std::polar(1.0, kTwoPi * k / angular);
      if (keep(z)) pts.push_back(z);
    }
  }
  // Hole-hugging rings, so minima near inner boundaries are not missed.
  constexpr double ring_scales[] = {0.0, 0.005, 0.02, 0.05};
  for (int j = 1; j < domain.connectivity(); ++j) {
    const Disk& h = domain.component(j);
    for (double s : ring_scales) {
      const double r = h.radius * (1.0 + s) + inset;
      for (int k = 0; k < angular; ++k) {
        const Complex z = h.center + r * std::polar(1.0, kTwoPi * k / angular);
        if (keep(z)) pts.push_back(z);
      }
    }
  }
  return pts;
}

}  // namespace circdom
