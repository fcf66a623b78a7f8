#pragma once

#include <optional>
#include <string>
#include <vector>

#include "circdom/types.hpp"

namespace circdom {

struct Disk {
  Complex center;
  double radius = 0.0;

  bool contains(Complex z) const { return std::abs(z - center) < radius; }
  // Signed distance to the circle |z - center| = radius (negative inside).
  double circle_distance(Complex z) const { return std::abs(z - center) - radius; }
};

bool operator==(const Disk& a, const Disk& b);

// One violated domain invariant; `first`/`second` are hole indices (1-based
// component indices, 0 = outer) of the offending disks.
struct DomainViolation {
  std::string name;  // HoleOverlap | HoleTouchesOuter | HoleOutsideOuter | InvalidDisk
  int first = -1;
  int second = -1;
  std::string detail;
};

// An open disk with finitely many closed pairwise-disjoint disks removed.
// Component 0 is the outer circle, component j >= 1 is holes()[j-1].
class CircularDomain {
 public:
  // Checks all invariants and throws a Validation error naming the first
  // violation (message lists all of them). `check` returns the list instead.
  static CircularDomain validate(const Disk& outer, std::vector<Disk> holes);
  static std::vector<DomainViolation> check(const Disk& outer,
                                            const std::vector<Disk>& holes);

  const Disk& outer() const { return outer_; }
  const std::vector<Disk>& holes() const { return holes_; }
  int connectivity() const { return 1 + static_cast<int>(holes_.size()); }

  // Component circle: j = 0 is the outer disk, j >= 1 the holes.
  const Disk& component(int j) const;

  double diameter() const { return 2.0 * outer_.radius; }

 private:
  CircularDomain(Disk outer, std::vector<Disk> holes)
      : outer_(outer), holes_(std::move(holes)) {}
  Disk outer_;
  std::vector<Disk> holes_;
};

// Annulus r_inner < |z| < r_outer centered at the origin.
CircularDomain annulus(double r_inner, double r_outer);

enum class RegionTag { Interior, InHole, OutsideOuter, OnBoundary };

struct Location {
  RegionTag tag = RegionTag::Interior;
  int component = -1;        // hole index for InHole, circle index for OnBoundary
  double boundary_distance = 0.0;  // dist(z, boundary of the domain)
};

// Classifies z against the domain. Points within boundary_tol * outer radius
// of some component circle are OnBoundary.
Location locate(const CircularDomain& domain, Complex z,
                double boundary_tol = tol::boundary);

bool is_real_symmetric(const CircularDomain& domain,
                       double rel_tol = tol::boundary);

CircularDomain conjugate(const CircularDomain& domain);

// For a real-symmetric domain, the pairing sigma with component
// sigma(j) = conjugate of component j (sigma(0) = 0, sigma(sigma(j)) = j).
// Empty optional if the domain is not real-symmetric.
std::optional<std::vector<int>> conjugate_component_map(
    const CircularDomain& domain, double rel_tol = 1e-9);

// Sampled circle slightly off a component circle, oriented as part of the
// null-homologous boundary cycle (outer counterclockwise, holes clockwise).
struct Contour {
  Disk disk;              // the component circle it tracks
  double offset = 1e-3;   // relative: effective radius r*(1-offset) or r*(1+offset)
  int orientation = +1;   // +1 outer (ccw), -1 hole (cw as seen from the domain)
  int samples = 256;      // power of two, >= 16
  bool inward = true;     // true: radius shrinks (outer), false: grows (holes)

  double effective_radius() const {
    return disk.radius * (inward ? 1.0 - offset : 1.0 + offset);
  }
  Complex point(double theta) const {
    return disk.center + effective_radius() * std::polar(1.0, theta);
  }
  // Counterclockwise sample points z_k = a + rho * e^{2 pi i k / M}.
  std::vector<Complex> points() const;
};

// Contour for component j of the domain; validates that the offset circle
// stays inside the domain and that samples is a power of two >= 16.
Contour component_contour(const CircularDomain& domain, int j, double offset,
                          int samples);

// Polar raster over the closed domain: points with locate() tag Interior or
// OnBoundary and boundary distance >= inset (absolute). Includes the
// boundary rings when inset == 0.
std::vector<Complex> polar_grid(const CircularDomain& domain, int radial,
                                int angular, double inset = 0.0);

}  // namespace circdom
