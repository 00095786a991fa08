#include "gop/transverse.hpp"

#include <algorithm>
#include <cmath>

namespace gop {

TransverseSet::TransverseSet(TorusGrid grid, DirGrid dirs,
                             std::vector<Hamiltonian> hams, double tol)
    : grid_(grid),
      dirs_(dirs),
      hams_(std::make_shared<std::vector<Hamiltonian>>(std::move(hams))),
      tol_(tol) {
  if (grid.dim != dirs.dim) throw UsageError("grid/direction dim mismatch");
  if (hams_->empty()) throw UsageError("empty Hamiltonian family");
  for (const Hamiltonian& H : *hams_)
    if (H.dim != grid.dim) throw UsageError("Hamiltonian dim mismatch");
  mask_.assign((std::size_t)grid.cells() * dirs.n_dirs, 0);
}

long TransverseSet::count() const {
  return std::count_if(mask_.begin(), mask_.end(),
                       [](std::uint8_t b) { return b != 0; });
}

TransverseSet transverse_zero_set(const std::vector<Hamiltonian>& hams,
                                  TorusGrid grid, DirGrid dirs, double tol) {
  TransverseSet ts(grid, dirs, hams, tol);
  for (int c = 0; c < grid.cells(); ++c) {
    const Vec x = grid.point(c);
    for (int d = 0; d < dirs.n_dirs; ++d) {
      const Vec w = dirs.dir(d);
      double worst = 0.0;
      for (const Hamiltonian& H : ts.hamiltonians())
        worst = std::max(worst, std::abs(H(x, w)));
      if (worst <= tol) ts.at_ref(c, d) = 1;
    }
  }
  return ts;
}

InvarianceReport check_invariance(const TransverseSet& ts,
                                  const CanonicalMap& g, double slack) {
  if (g.dim != ts.grid().dim) throw UsageError("map dim mismatch");
  InvarianceReport r;
  const double bound = ts.tol() + slack;
  for (int c = 0; c < ts.grid().cells(); ++c)
    for (int d = 0; d < ts.dirs().n_dirs; ++d) {
      if (!ts.at(c, d)) continue;
      ++r.checked;
      const PhasePoint m{ts.grid().point(c), ts.dirs().dir(d)};
      const PhasePoint gm = g.forward(m);
      double worst = 0.0;
      for (const Hamiltonian& H : ts.hamiltonians())
        worst = std::max(worst, std::abs(H(gm.x, gm.p)));
      r.worst_value = std::max(r.worst_value, worst);
      if (worst > bound) ++r.violations;
    }
  return r;
}

ConormalReport conormal_orbit_check(
    const std::vector<std::function<Vec(const Vec&)>>& fields,
    const TransverseSet& ts, double tol) {
  if (fields.size() != ts.hamiltonians().size())
    throw UsageError("one field per Hamiltonian required");
  ConormalReport r;
  for (int c = 0; c < ts.grid().cells(); ++c) {
    const Vec x = ts.grid().point(c);
    for (int d = 0; d < ts.dirs().n_dirs; ++d) {
      const Vec w = ts.dirs().dir(d);
      for (std::size_t i = 0; i < fields.size(); ++i) {
        const double pairing = dot(w, fields[i](x));
        const double gap = std::abs(ts.hamiltonians()[i](x, w) - pairing);
        if (gap > tol) {
          r.consistent = false;
          r.worst_gap = std::max(r.worst_gap, gap);
        }
        if (ts.at(c, d) && std::abs(pairing) > ts.tol() + tol) {
          ++r.mismatched;
          r.worst_gap = std::max(r.worst_gap, std::abs(pairing));
        }
      }
    }
  }
  return r;
}

}  // namespace gop
