#include "gop/generating.hpp"

#include <cmath>
#include <sstream>

namespace gop {

GeneratingFunction::GeneratingFunction(Hamiltonian H, double t, FlowOptions opts)
    : H_(std::move(H)), t_(t), opts_(opts) {
  if (std::abs(t) > opts.t_max + 1e-15)
    throw UsageError("|t| exceeds the admissible window");
}

GeneratingFunction generating_function(const Hamiltonian& H, double t,
                                       const FlowOptions& opts) {
  return GeneratingFunction(H, t, opts);
}

Vec GeneratingFunction::characteristic_root(const Vec& x,
                                            const Vec& omega_prime) const {
  const int d = H_.dim;
  if (t_ == 0.0) return x;
  auto F = [&](const Vec& z) {
    const PhasePoint end = integrate_flow(H_, t_, {z, omega_prime}, opts_);
    return sub(end.x, x);
  };
  Vec z = x;
  Vec f = F(z);
  auto sup = [d](const Vec& v) {
    return d == 1 ? std::abs(v[0]) : std::max(std::abs(v[0]), std::abs(v[1]));
  };
  const double fd = 1e-6;
  for (int iter = 0; iter < 50; ++iter) {
    if (sup(f) <= 1e-12) return z;
    // FD Jacobian of F in z, then one damped Newton step
    double J[2][2] = {{1, 0}, {0, 1}};
    for (int k = 0; k < d; ++k) {
      Vec zp = z, zm = z;
      zp[k] += fd;
      zm[k] -= fd;
      const Vec fp = F(zp), fm = F(zm);
      for (int j = 0; j < d; ++j) J[j][k] = (fp[j] - fm[j]) / (2.0 * fd);
    }
    Vec step{0.0, 0.0};
    if (d == 1) {
      if (std::abs(J[0][0]) < 1e-14)
        throw CausticError("degenerate characteristic Jacobian");
      step[0] = f[0] / J[0][0];
    } else {
      const double det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
      if (std::abs(det) < 1e-14)
        throw CausticError("degenerate characteristic Jacobian");
      step[0] = (J[1][1] * f[0] - J[0][1] * f[1]) / det;
      step[1] = (J[0][0] * f[1] - J[1][0] * f[0]) / det;
    }
    double damp = 1.0;
    for (int half = 0; half < 12; ++half) {
      const Vec znew = sub(z, scale(damp, step));
      const Vec fnew = F(znew);
      if (sup(fnew) < sup(f)) {
        z = znew;
        f = fnew;
        break;
      }
      damp *= 0.5;
      if (half == 11) {
        std::ostringstream os;
        os << "characteristic inversion stalled for " << H_.name
           << " at t=" << t_ << " (residual " << sup(f) << ")";
        throw CausticError(os.str());
      }
    }
  }
  if (sup(f) <= 1e-10) return z;
  std::ostringstream os;
  os << "characteristic inversion did not converge for " << H_.name
     << " at t=" << t_ << " (residual " << sup(f) << ")";
  throw CausticError(os.str());
}

double GeneratingFunction::value(const Vec& x, const Vec& pprime) const {
  const double r = norm(pprime);
  if (r == 0.0) throw DomainError("generating function at zero covector");
  if (t_ == 0.0) return dot(x, pprime);
  const Vec w = scale(1.0 / r, pprime);
  return r * dot(w, characteristic_root(x, w));
}

Vec GeneratingFunction::grad_x(const Vec& x, const Vec& pprime) const {
  const double h = 1e-6;
  Vec g{0.0, 0.0};
  for (int k = 0; k < H_.dim; ++k) {
    Vec xp = x, xm = x;
    xp[k] += h;
    xm[k] -= h;
    g[k] = (value(xp, pprime) - value(xm, pprime)) / (2.0 * h);
  }
  return g;
}

Vec GeneratingFunction::grad_pprime(const Vec& x, const Vec& pprime) const {
  const double h = 1e-6 * (1.0 + norm(pprime));
  Vec g{0.0, 0.0};
  for (int k = 0; k < H_.dim; ++k) {
    Vec pp = pprime, pm = pprime;
    pp[k] += h;
    pm[k] -= h;
    g[k] = (value(x, pp) - value(x, pm)) / (2.0 * h);
  }
  return g;
}

double verify_hamilton_jacobi(const GeneratingFunction& S,
                              std::span<const PhasePoint> samples, double dt) {
  if (samples.empty()) throw UsageError("no samples");
  const Hamiltonian& H = S.hamiltonian();
  const double t = S.time();
  const bool one_sided = std::abs(t) < dt;
  GeneratingFunction Sp(H, t + dt, S.options());
  GeneratingFunction Sm = one_sided ? S : GeneratingFunction(H, t - dt, S.options());
  double worst = 0.0;
  for (const PhasePoint& m : samples) {
    const double st =
        one_sided ? (Sp.value(m.x, m.p) - S.value(m.x, m.p)) / dt
                  : (Sp.value(m.x, m.p) - Sm.value(m.x, m.p)) / (2.0 * dt);
    const Vec sx = S.grad_x(m.x, m.p);
    worst = std::max(worst, std::abs(st + H(m.x, sx)));
  }
  return worst;
}

GraphEquationsReport verify_graph_equations(const GeneratingFunction& S,
                                            const CanonicalMap& g,
                                            std::span<const PhasePoint> samples) {
  if (samples.empty()) throw UsageError("no samples");
  GraphEquationsReport r;
  for (const PhasePoint& pre : samples) {
    const PhasePoint img = g.forward(pre);  // (x, p)
    const Vec sx = S.grad_x(img.x, pre.p);
    const Vec sp = S.grad_pprime(img.x, pre.p);
    for (int k = 0; k < g.dim; ++k) {
      r.max_p_residual = std::max(r.max_p_residual, std::abs(sx[k] - img.p[k]));
      r.max_x_residual =
          std::max(r.max_x_residual, std::abs(wrap_pm_pi(sp[k] - pre.x[k])));
    }
  }
  return r;
}

}  // namespace gop
