#pragma once
#include <functional>
#include <string>
#include <vector>

#include "gop/crossed.hpp"
#include "gop/grid_operator.hpp"

namespace gop {

// Finite-section index evidence across a sweep of grid sizes.  Kernel and
// cokernel counts come from rectangular band compressions in the discrete
// Fourier basis: columns restricted to |xi| <= K = n/8, rows to
// |xi| <= K + 4.  Square truncations of an operator with nonzero index
// always report index 0 (they are square matrices); widening the row window
// lets one-sided ladders keep their full column rank while the adjoint's
// compression exposes the missing modes.
struct IndexReport {
  std::vector<int> sizes;
  // smallest singular values (ascending) of the compression of D and of D*
  std::vector<std::vector<double>> sv_head;
  std::vector<std::vector<double>> sv_head_adj;
  std::vector<int> dim_ker;
  std::vector<int> dim_coker;
  std::vector<int> index;  // dim_ker - dim_coker, per size
  // per size: smallest sigma above svd_tol over the largest sigma below it
  // (or over svd_tol itself when nothing falls below)
  std::vector<double> gap_ratio;
  double svd_tol = 0.0;
  bool stable = false;      // index constant across all sizes
  bool conclusive = false;  // every gap ratio >= 10
  std::string verdict;      // "stable" | "unstable" | "inconclusive"
  int index_estimate = 0;   // meaningful iff stable && conclusive
};

// pre: >= 3 operators on strictly increasing grid sizes (n >= 32 each, same
// dimension), svd_tol > 0.  Never trusts a count without a visible spectral
// gap: a gap ratio under 10 at any size makes the verdict "inconclusive".
IndexReport numerical_index(const std::vector<GridOperator>& ops,
                            double svd_tol);

// CSV export: one row per size with dims, index, gap and the sigma heads
void write_index_report(const std::string& path, const IndexReport& rep);

// Almost-inverse residuals of R = assemble(1 + b) against D, measured on
// dyadic frequency annuli [K, 2K] and [2K, 4K].  Nested tail projections
// are monotone by construction, so the decay of the residual's frequency
// profile is only visible on disjoint windows.
struct AlmostInverseReport {
  GridOperator r;
  int band = 0;
  double left_at_band = 0.0;    // ||P(RD - I)P||, P on [K, 2K]
  double right_at_band = 0.0;   // ||P(DR - I)P||
  double left_at_double = 0.0;  // same on [2K, 4K]
  double right_at_double = 0.0;
  // non-increase up to roundoff slack; exactly-banded residuals (truncated
  // Neumann series of a shift) are constant across annuli
  bool left_decreasing = false;
  bool right_decreasing = false;
  bool calculus_failure = false;  // some side genuinely increased
};

// pre: b is the correction from symbol_inverse ((1+a)(1+b) = 1); band >= 1
// with 4*band inside the guarded frequency range (16*band <= n)
AlmostInverseReport almost_inverse(const GridOperator& d,
                                   const CrossedElement& b,
                                   const GroupModel& G,
                                   const Representation& rep, int band);

// Builds the element under test on each grid of the size sweep.  The
// element is in unitization form (unit + coefficients); a pure symbol
// coefficient a at the identity is passed as 1 + (a - 1) delta_e, which
// assembles to the same operator and is invertible iff a is fiberwise.
using ElementBuilder =
    std::function<CrossedElement(const TorusGrid&, const DirGrid&)>;

struct EllipticityOptions {
  std::vector<int> sizes = {64, 128, 256};
  std::vector<int> windows = {8, 16, 32, 64};
  int n_bases = 16;
  double section_threshold = 1e-3;
  double svd_tol = 1e-6;
  double inverse_tol = 1e-8;
  double inverse_max_radius = 64.0;
  int almost_band = 8;
};

struct EllipticityReport {
  std::vector<int> sizes;
  std::vector<double> sigma_min;  // of the assembled operator, per size
  SectionReport sections;
  bool inverse_ok = false;
  double inverse_left = 0.0;
  double inverse_right = 0.0;
  std::string inverse_note;  // failure reason when !inverse_ok
  bool almost_ran = false;
  AlmostInverseReport almost;
  IndexReport index;
  bool fredholm_consistent = false;
};

// Consolidated ellipticity => Fredholm evidence: trajectory finite sections,
// symbol inverse, almost-inverse residuals, and the index sweep.  The
// verdict "fredholm_consistent" requires all four to pass with a stable,
// conclusive index.  Conditioning/truncation failures of the symbol inverse
// are recorded as evidence of non-ellipticity, not rethrown; usage errors
// propagate.  Dimension-1 grids with translation actions only.
EllipticityReport ellipticity_experiment(const ElementBuilder& build,
                                         const GroupModel& G,
                                         const EllipticityOptions& opts = {});

}  // namespace gop
