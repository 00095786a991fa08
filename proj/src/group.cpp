#include "gop/group.hpp"

#include <cmath>

#include "gop/errors.hpp"

namespace gop {

namespace {

long round_checked(double g, double scale, const char* what) {
  const double t = g / scale;
  const double r = std::round(t);
  if (std::abs(t - r) > 1e-9 * (1.0 + std::abs(t)))
    throw UsageError(std::string("group parameter off the ") + what);
  return (long)r;
}

}  // namespace

double GroupModel::snap(double g) const {
  switch (kind) {
    case GroupKind::Trivial: {
      if (round_checked(g, 1.0, "integer lattice") != 0)
        throw UsageError("trivial group has only the identity");
      return 0.0;
    }
    case GroupKind::Cyclic: {
      long k = round_checked(g, 1.0, "integer lattice") % modulus;
      if (k < 0) k += modulus;
      return (double)k;
    }
    case GroupKind::Integers:
      return (double)round_checked(g, 1.0, "integer lattice");
    case GroupKind::Line: {
      const long k = round_checked(g, step, "quadrature lattice");
      const double v = (double)k * step;
      if (std::abs(v) > window + 1e-9 * step)
        throw TruncationError("group parameter outside the quadrature window");
      return v;
    }
  }
  throw UsageError("unknown group kind");
}

double GroupModel::compose(double g, double h) const {
  return snap(snap(g) + snap(h));
}

double GroupModel::inverse(double g) const { return snap(-snap(g)); }

double GroupModel::haar_weight(double g) const {
  if (kind != GroupKind::Line) return 1.0;
  const double v = snap(g);
  return (std::abs(std::abs(v) - window) <= 1e-9 * step) ? 0.5 * step : step;
}

GroupModel make_integer_rotation(double alpha) {
  GroupModel G;
  G.kind = GroupKind::Integers;
  G.dim = 1;
  G.action = [alpha](double g) {
    return translation_map(vec1(g * alpha), 1);
  };
  return G;
}

GroupModel make_cyclic_rotation(int n) {
  if (n < 1) throw UsageError("cyclic group needs n >= 1");
  GroupModel G;
  G.kind = GroupKind::Cyclic;
  G.dim = 1;
  G.modulus = n;
  G.action = [n](double g) {
    return translation_map(vec1(g * kTwoPi / n), 1);
  };
  return G;
}

GroupModel make_line_flow(const Hamiltonian& H, double window, int half_nodes,
                          FlowOptions opts) {
  if (!(window > 0.0) || half_nodes < 1)
    throw UsageError("line group needs a positive window and >= 1 node");
  GroupModel G;
  G.kind = GroupKind::Line;
  G.dim = H.dim;
  G.window = window;
  G.step = window / half_nodes;
  if (opts.t_max < window) opts.t_max = 1.5 * window;
  G.action = [H, opts](double g) { return flow_map(H, g, opts); };
  return G;
}

GroupModel make_trivial_group(int dim) {
  GroupModel G;
  G.kind = GroupKind::Trivial;
  G.dim = dim;
  G.action = [dim](double) { return identity_map(dim); };
  return G;
}

}  // namespace gop
