#pragma once
#include <string>
#include <vector>

#include "gop/grid_operator.hpp"
#include "gop/group.hpp"
#include "gop/symbol.hpp"
#include "gop/transverse.hpp"

namespace gop {

struct CrossedTerm {
  double g = 0.0;
  HomogeneousSymbol a;
};

// Element of the unitized crossed product C(S*M) x| G: finitely many symbol
// coefficients indexed by (snapped) group parameters plus a scalar multiple
// of the adjoined unit.  Terms are kept sorted by parameter, one per
// parameter.
struct CrossedElement {
  TorusGrid grid;
  DirGrid dirs;
  cplx unit = 0.0;
  std::vector<CrossedTerm> terms;

  static CrossedElement make(TorusGrid grid, DirGrid dirs, cplx unit = 0.0);

  // adds (or accumulates into) the coefficient at parameter g
  void add_term(double g, const HomogeneousSymbol& a, const GroupModel& G);
  const HomogeneousSymbol* coeff(double g) const;
  double support_radius() const;  // max |g| over terms, 0 if none
  // max-coefficient norm: max(|unit|, max_g ||a_g||_inf)
  double coeff_norm() const;
  // drops terms with ||a_g||_inf <= floor
  CrossedElement& prune(double floor);
};

// twisted convolution (a ! b)_g = sum_h w_h a_h (b_{h^{-1}g} o h^{-1});
// units multiply and cross-distribute; w_h is the Haar weight
CrossedElement convolve(const CrossedElement& a, const CrossedElement& b,
                        const GroupModel& G);

// (a*)_g = conj(a_{g^{-1}}) o g^{-1}, unit conjugated
CrossedElement involution(const CrossedElement& a, const GroupModel& G);

// masks every coefficient to the transverse cells (values elsewhere zeroed)
CrossedElement restrict_to_transverse(const CrossedElement& a,
                                      const TransverseSet& ts);

// Regular representation of the element at a base point, truncated to a
// finite window: M[h,k] = a_{h k^{-1}}(orbit_h) (+ unit on the diagonal),
// orbit_h = act(h)(base).  Line sections carry the symmetrized quadrature
// weights sqrt(w_h w_k).
struct TrajectoryOperator {
  CMatrix m;
  CospherePoint base;
  std::vector<double> params;  // group parameter per matrix index
};

TrajectoryOperator trajectory_symbol(const CrossedElement& a,
                                     const GroupModel& G,
                                     const CospherePoint& base, int window);

struct SectionProfile {
  CospherePoint base;
  std::vector<double> sigma_min;  // one per window
};

struct SectionReport {
  std::vector<int> windows;
  std::vector<SectionProfile> profiles;
  double threshold = 0.0;
  std::string verdict;  // "elliptic" | "degenerate" | "inconclusive"
};

// Finite-section invertibility sweep: sigma_min of the trajectory sections
// across growing windows.  "degenerate" when some base point's sigma_min
// halves from the first window to the last, "elliptic" when every value
// stays above the threshold, "inconclusive" otherwise.
SectionReport finite_section_invertibility(
    const CrossedElement& a, const GroupModel& G,
    const std::vector<CospherePoint>& bases, const std::vector<int>& windows,
    double threshold = 1e-3);

struct InverseReport {
  CrossedElement b;  // correction term: (1 + a) ! (1 + b) = 1 up to residual
  double left_residual = 0.0;
  double right_residual = 0.0;
  int iterations = 0;
};

// Inverts the unitization 1 + a by fiberwise division (support at the
// identity) or a truncated Newton iteration (general support), capping the
// support radius at max_radius (default 4x the input radius).  Throws
// ConditioningError when the residual cannot be brought below tol within
// the cap.
InverseReport symbol_inverse(const CrossedElement& a, const GroupModel& G,
                             double tol = 1e-10, double max_radius = -1.0);

// quantized representation g -> Phi_g backing the assembled operator
struct Representation {
  std::function<GridOperator(double g)> phi;
  std::string descriptor;
};

// shifts by g -> act(g) translation vector; rotation kinds and translation
// flows
Representation shift_representation(const GroupModel& G, const TorusGrid& grid);

// D = unit I + sum_g w_g Op(a_g) Phi_g
GridOperator assemble_G_operator(const CrossedElement& elt,
                                 const GroupModel& G,
                                 const Representation& rep,
                                 const TorusGrid& grid);

// structured-text (JSON) serialization; exact double round-trip
void write_crossed_element(const std::string& path, const CrossedElement& e);
CrossedElement read_crossed_element(const std::string& path);

}  // namespace gop
