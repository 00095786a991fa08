#pragma once
#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "gop/canonical.hpp"
#include "gop/hamiltonian.hpp"
#include "gop/symbol.hpp"

namespace gop {

// Discretized transverse cotangent space: the cosphere cells where every
// Hamiltonian of the defining family vanishes (|H_i| <= tol).  Keeps the
// family so invariance/consistency checks can re-evaluate it.
class TransverseSet {
 public:
  TransverseSet() = default;
  TransverseSet(TorusGrid grid, DirGrid dirs, std::vector<Hamiltonian> hams,
                double tol);

  const TorusGrid& grid() const { return grid_; }
  const DirGrid& dirs() const { return dirs_; }
  const std::vector<Hamiltonian>& hamiltonians() const { return *hams_; }
  double tol() const { return tol_; }

  bool at(int x_cell, int d_cell) const {
    return mask_[(std::size_t)x_cell * dirs_.n_dirs + d_cell] != 0;
  }
  std::uint8_t& at_ref(int x_cell, int d_cell) {
    return mask_[(std::size_t)x_cell * dirs_.n_dirs + d_cell];
  }
  const std::vector<std::uint8_t>& mask() const { return mask_; }
  long count() const;
  bool empty() const { return count() == 0; }
  bool full() const { return count() == (long)mask_.size(); }

 private:
  TorusGrid grid_;
  DirGrid dirs_;
  std::shared_ptr<std::vector<Hamiltonian>> hams_;
  double tol_ = 0.0;
  std::vector<std::uint8_t> mask_;
};

// common zero set of the family on the cosphere grid
TransverseSet transverse_zero_set(const std::vector<Hamiltonian>& hams,
                                  TorusGrid grid, DirGrid dirs,
                                  double tol = 1e-9);

struct InvarianceReport {
  long checked = 0;
  long violations = 0;
  double worst_value = 0.0;  // max over marked cells of max_i |H_i(g(m))|
};

// Each marked cell, pushed through g, must still satisfy max_i |H_i| <= tol
// + slack.  Evaluated at the exact mapped phase point (not the snapped cell):
// snapping would measure grid coarseness, not invariance.
InvarianceReport check_invariance(const TransverseSet& ts,
                                  const CanonicalMap& g, double slack = 1e-6);

struct ConormalReport {
  bool consistent = true;       // H_i(x, w) == <w, V_i(x)> on the whole grid
  long mismatched = 0;          // marked cells not conormal to the orbit
  double worst_gap = 0.0;
};

// For a group action with infinitesimal generator fields V_i on M, the
// defining Hamiltonians are the pairings H_i(x, p) = <p, V_i(x)> and the
// transverse set is the conormal to the orbits.  Checks both facts on the
// grid: family/pairing consistency everywhere, <w, V_i(x)> = 0 on marked
// cells.
ConormalReport conormal_orbit_check(
    const std::vector<std::function<Vec(const Vec& x)>>& fields,
    const TransverseSet& ts, double tol = 1e-8);

}  // namespace gop
