#include "gop/flow.hpp"

#include <cmath>
#include <sstream>

namespace gop {

namespace {

struct State {
  Vec x, p;
};

State deriv(const Hamiltonian& H, const State& s) {
  return {H.grad_p(s.x, s.p), scale(-1.0, H.grad_x(s.x, s.p))};
}

State axpy(const State& s, double a, const State& d) {
  return {add(s.x, scale(a, d.x)), add(s.p, scale(a, d.p))};
}

}  // namespace

PhasePoint integrate_flow(const Hamiltonian& H, double t, const PhasePoint& m0,
                          const FlowOptions& opts) {
  if (std::abs(t) > opts.t_max + 1e-15)
    throw UsageError("|t| exceeds the admissible window");
  if (norm(m0.p) == 0.0) throw DomainError("flow started on the zero section");
  if (t == 0.0) return m0;
  const int nsteps = std::max(1, (int)std::ceil(std::abs(t) / opts.step));
  const double h = t / nsteps;
  State s{m0.x, m0.p};
  for (int i = 0; i < nsteps; ++i) {
    const State k1 = deriv(H, s);
    const State k2 = deriv(H, axpy(s, h / 2.0, k1));
    const State k3 = deriv(H, axpy(s, h / 2.0, k2));
    const State k4 = deriv(H, axpy(s, h, k3));
    s.x = add(s.x, scale(h / 6.0,
                         add(add(k1.x, scale(2.0, add(k2.x, k3.x))), k4.x)));
    s.p = add(s.p, scale(h / 6.0,
                         add(add(k1.p, scale(2.0, add(k2.p, k3.p))), k4.p)));
    if (norm(s.p) < opts.p_floor) {
      std::ostringstream os;
      os << "|p| underflow along trajectory of " << H.name << " at step " << i;
      throw SingularityError(os.str());
    }
  }
  return {s.x, s.p};
}

CanonicalMap flow_map(const Hamiltonian& H, double t, const FlowOptions& opts) {
  if (std::abs(t) > opts.t_max + 1e-15)
    throw UsageError("|t| exceeds the admissible window");
  CanonicalMap g;
  g.dim = H.dim;
  std::ostringstream os;
  os << "flow(" << H.name << "," << t << ")";
  g.name = os.str();
  g.forward = [H, t, opts](const PhasePoint& m) {
    return integrate_flow(H, t, m, opts);
  };
  g.inverse = [H, t, opts](const PhasePoint& m) {
    return integrate_flow(H, -t, m, opts);
  };
  return g;
}

}  // namespace gop
