#pragma once
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "gop/crossed.hpp"
#include "gop/grid_operator.hpp"
#include "gop/transverse.hpp"

namespace gop {

// nearest direction cell to a nonzero covector
int nearest_dir(const DirGrid& dirs, const Vec& w);

// Sparse set of marked operator-relation pairs (x, xi; x', xi') on the
// product cosphere grid, each carrying a nonnegative mass.  Pairs follow the
// twisted convention: xi' is the covector the operator maps *from*, so the
// identity marks the diagonal (m, m).
struct WavefrontSet {
  TorusGrid grid;
  DirGrid dirs;
  std::map<long, double> mass;

  static WavefrontSet make(TorusGrid grid, DirGrid dirs);

  long pack(int i, int d, int j, int d2) const;
  void unpack(long key, int& i, int& d, int& j, int& d2) const;

  // keeps the larger mass when marking a pair twice
  void mark(int i, int d, int j, int d2, double m);
  bool at(int i, int d, int j, int d2) const;
  long count() const { return (long)mass.size(); }
  bool empty() const { return mass.empty(); }
  double total_mass() const;
};

// Schwartz-kernel samples of a grid operator: K(x_i, x_j) = M_ij / h^dim,
// so that (Du)(x_i) = sum_j h^dim K(x_i, x_j) u(x_j)
CMatrix kernel_of(const GridOperator& op);

struct WavefrontOptions {
  int patch = 16;        // windowed-Fourier patch edge (cells)
  double window = 8.0;   // Gaussian window width (cells, >= 4)
  double taper = 0.35;   // frequency mollifier width, fraction of n
  double energy_threshold = 0.1;  // quadrant fraction of the cell energy
  double cell_floor = 1e-3;       // cell energy fraction of the kernel max
};

// Windowed-Fourier surrogate for the kernel wavefront set (dim 1), a fixed
// three-stage pipeline: (1) the kernel is mollified on both sides by a
// Gaussian frequency taper, which cannot enlarge the wavefront set but kills
// the Dirichlet tails of band-limited ridges; (2) each kernel cell gets a
// Gaussian-windowed patch spectrum, and a pair (x, sgn a; x', -sgn b) is a
// candidate when the quadrant at (a, b) holds at least energy_threshold of
// the cell's high-band energy and that high-band energy clears an absolute
// floor against the kernel's peak cell energy (so smooth kernels stay
// empty); (3) candidates must be local energy maxima of their quadrant along
// both kernel axes, which undoes the window-width spatial blur (ties
// survive, so genuine energy plateaus stay marked).
WavefrontSet wavefront_estimate(const GridOperator& op,
                                const WavefrontOptions& opts = {});

// Union of the twisted graphs {(m, act(g)^{-1} m)} over the support of each
// coefficient (|a_g| > 1e-12, dilated one x-cell), plus the full diagonal
// when the unit is present.  A transverse set, when given, filters both
// components of every pair (continuous averaging smooths away the rest; pass
// nullptr for the discrete kinds).
WavefrontSet predicted_wavefront(const CrossedElement& elt,
                                 const GroupModel& G,
                                 const TransverseSet* ts = nullptr);

struct ContainmentReport {
  double outside_mass = 0.0;
  double total_mass = 0.0;
  double outside_fraction = 0.0;
  long marked = 0;
  bool pass = false;
};

// Mass fraction of `estimated` falling outside `predicted` dilated by
// slack_x cells in both position components and slack_dir direction cells.
ContainmentReport containment_report(const WavefrontSet& estimated,
                                     const WavefrontSet& predicted,
                                     int slack_x = 2, int slack_dir = 0,
                                     double budget = 0.05);

// Mask exports for regression artifacts.  The CSV lists every cell of the
// product grid as integer cell coordinates plus a 0/1 flag (dim 1 columns
// x0,dir,flag; dim 2 columns x0,x1,dir,flag).  The bitset file packs the
// same flags eight per byte, LSB first, after a fixed 20-byte header, so
// runs can be diffed bytewise.
void write_mask_csv(const std::string& path, const TransverseSet& ts);
void write_mask_bits(const std::string& path, const TransverseSet& ts);

// Marked pairs of a wavefront set as CSV: cell coordinates of both legs and
// the mass, in packed-key order.
void write_wavefront_csv(const std::string& path, const WavefrontSet& ws);

struct SmoothingReport {
  std::vector<double> bands;
  std::vector<double> norms;   // band_norm at each K
  double exponent = 0.0;       // least-squares slope of -log norm vs log K
  bool decreasing = false;     // strict decay at every step
  bool smoothing_consistent = false;  // decreasing and exponent >= 1
};

// Band-norm decay profile ||P_K D P_K|| across dyadic bands; a smoothing
// operator shows strictly decaying norms with fitted exponent >= 1
SmoothingReport smoothing_check(const GridOperator& op,
                                const std::vector<double>& bands);

// Oscillatory-integral phase family Psi(x, x', t, theta), positively
// homogeneous of degree one in theta.  n_t = 0 drops the t variable.
struct PhaseFamily {
  int dim = 1;
  std::function<double(const Vec& x, const Vec& xp, double t,
                       const Vec& theta)>
      psi;
  std::function<double(const Vec& x, const Vec& xp, double t,
                       const Vec& theta)>
      amplitude;  // nullptr means 1
  double t_min = 0.0;
  double t_max = 0.0;
  int n_t = 0;
  int n_theta = 16;  // angular samples in dim 2 (dim 1 uses both signs)
};

struct StationaryOptions {
  double tol_theta = -1.0;  // |Psi'_theta| cutoff; < 0 means 0.6 * h
  double tol_t = 0.15;      // |Psi'_t| cutoff
  double amp_floor = 1e-12;
  double fd_step = 1e-5;
};

// Stationary-phase support of the family on the product cosphere grid:
// marks (x, dir Psi'_x; x', dir -Psi'_{x'}) wherever the phase is stationary
// in theta (and t) and the amplitude is alive.  Homogeneity in theta and
// nonvanishing of the spatial gradient are prechecked on samples.
WavefrontSet stationary_phase_support(const PhaseFamily& fam,
                                      const TorusGrid& grid,
                                      const DirGrid& dirs,
                                      const StationaryOptions& opts = {});

}  // namespace gop
