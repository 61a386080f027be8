#pragma once

// Stochastic lattices: finite point sets with a min-separation radius r and a
// covering radius R, plus the generators used throughout (random parking,
// cubic, jittered cubic).

#include <cstdint>
#include <string>
#include <vector>

#include "msh/common.hpp"
#include "msh/window.hpp"

namespace msh {

enum class Generator { rsa, cubic, jitter, custom };

std::string generator_name(Generator g);
Generator generator_from_name(const std::string& s);

struct StochasticLattice {
  Window window;
  std::vector<Vec> points;
  double r = 0.0;   // guaranteed min pairwise separation
  double R = 0.0;   // covering radius bound, r < R
  uint64_t seed = 0;
  Generator generator = Generator::custom;
  double spacing = 0.0;  // cubic family only
  double jitter = 0.0;   // cubic family only

  int size() const { return static_cast<int>(points.size()); }
  int dim() const { return window.d; }
};

// Uniform spatial binning for neighbor queries; bin size >= R keeps the
// expected occupancy O(1) for admissible lattices. Handles torus wrap.
class PointGrid {
 public:
  PointGrid(const Window& window, const std::vector<Vec>& points, double bin_size);

  // Index of the nearest point to z and its (wrapped) distance.
  std::pair<int, double> nearest(const Vec& z) const;

  // All point indices within distance <= radius of z (includes z's own index
  // if z is a lattice point).
  std::vector<int> within(const Vec& z, double radius) const;

  // Min pairwise distance over the whole point set (exact).
  double min_pairwise_distance() const;

  // Bins the point at `index` of the backing vector (append-only growth).
  void add(int index);

  double bin_size() const { return bin_; }

 private:
  void cell_of(const Vec& z, int* idx) const;
  int flat(const int* idx) const;

  Window win_;
  const std::vector<Vec>* pts_;
  double bin_;
  int n_[kMaxDim] = {1, 1, 1};
  std::vector<std::vector<int>> cells_;
};

struct AdmissibilityReport {
  double r_emp = 0.0;  // exact min pairwise distance
  double R_emp = 0.0;  // max over audit grid of distance to the lattice
  double audit_pitch = 0.0;
  bool pass = false;
};

// Sequential random adsorption to certified saturation. r = hardcore_diameter;
// R is the audit-grid covering radius plus the grid resolution slack, so it is
// an upper bound on the true covering radius.
StochasticLattice generate_random_parking(const Window& window, double hardcore_diameter,
                                          uint64_t seed);

// Grid points lo + i*spacing (component-wise), optionally jittered per point
// by a uniform displacement in [-jitter, jitter]^d. Requires jitter < spacing/2.
StochasticLattice generate_cubic(const Window& window, double spacing, double jitter = 0.0,
                                 uint64_t seed = 0);

// r_emp = exact min pairwise distance; R_emp = max over an audit grid of pitch
// audit_pitch of the distance to the lattice. pass iff r_emp >= r and R_emp < R.
AdmissibilityReport check_admissibility(const StochasticLattice& lattice, double audit_pitch);

// Same audit against an explicit list of probe points instead of the window
// grid (used for isometry-invariance checks where the audit set co-transforms).
double covering_radius(const StochasticLattice& lattice, const std::vector<Vec>& probes);

// x -> rotation*x + shift. rotation must be orthogonal within 1e-12. On a
// torus the result is wrapped back into the window.
StochasticLattice transform_lattice(const StochasticLattice& lattice,
                                    const std::vector<double>& rotation, const Vec& shift);

// Default audit pitch: r/8 bounds the R_emp discretization error by r*sqrt(d)/16.
inline double default_audit_pitch(const StochasticLattice& l) { return l.r / 8.0; }

}  // namespace msh
