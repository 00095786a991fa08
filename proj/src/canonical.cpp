#include "gop/canonical.hpp"

#include <cmath>
#include <random>

namespace gop {

CanonicalMap identity_map(int dim) {
  CanonicalMap g;
  g.dim = dim;
  g.name = "id";
  g.forward = [](const PhasePoint& m) { return m; };
  g.inverse = g.forward;
  return g;
}

CanonicalMap translation_map(const Vec& c, int dim) {
  CanonicalMap g;
  g.dim = dim;
  g.name = "translation";
  g.forward = [c](const PhasePoint& m) {
    return PhasePoint{add(m.x, c), m.p};
  };
  g.inverse = [c](const PhasePoint& m) {
    return PhasePoint{sub(m.x, c), m.p};
  };
  return g;
}

CanonicalMap compose_maps(const CanonicalMap& g2, const CanonicalMap& g1) {
  if (g2.dim != g1.dim) throw UsageError("composing maps of different dim");
  CanonicalMap g;
  g.dim = g1.dim;
  g.name = g2.name + "*" + g1.name;
  auto f2 = g2.forward, f1 = g1.forward;
  auto i2 = g2.inverse, i1 = g1.inverse;
  g.forward = [f2, f1](const PhasePoint& m) { return f2(f1(m)); };
  g.inverse = [i2, i1](const PhasePoint& m) { return i1(i2(m)); };
  return g;
}

CanonicalMap inverse_map(const CanonicalMap& g) {
  CanonicalMap r;
  r.dim = g.dim;
  r.name = g.name + "^-1";
  r.forward = g.inverse;
  r.inverse = g.forward;
  return r;
}

CanonicalCheck check_homogeneous_canonical(const CanonicalMap& g,
                                           std::span<const PhasePoint> samples,
                                           double fd_scale) {
  if (samples.empty()) throw UsageError("no samples");
  CanonicalCheck r;
  r.n_samples = (int)samples.size();
  const int d = g.dim;
  for (const PhasePoint& m : samples) {
    if (norm(m.p) == 0.0) throw DomainError("sample on the zero section");
    const double h = fd_scale * (1.0 + norm(m.p));
    const PhasePoint gm = g.forward(m);
    for (int k = 0; k < d; ++k) {
      PhasePoint mp = m, mm = m;
      mp.p[k] += h;
      mm.p[k] -= h;
      const PhasePoint gp = g.forward(mp), gmn = g.forward(mm);
      double acc_p = 0.0;
      for (int j = 0; j < d; ++j)
        acc_p += gm.p[j] * (gp.x[j] - gmn.x[j]) / (2.0 * h);
      r.max_p_residual = std::max(r.max_p_residual, std::abs(acc_p));

      PhasePoint xp = m, xm = m;
      xp.x[k] += h;
      xm.x[k] -= h;
      const PhasePoint gxp = g.forward(xp), gxm = g.forward(xm);
      double acc_x = 0.0;
      for (int j = 0; j < d; ++j)
        acc_x += gm.p[j] * (gxp.x[j] - gxm.x[j]) / (2.0 * h);
      r.max_x_residual = std::max(r.max_x_residual, std::abs(acc_x - m.p[k]));
    }
    const PhasePoint g2 = g.forward({m.x, scale(2.0, m.p)});
    double hom = 0.0;
    for (int j = 0; j < d; ++j) {
      hom = std::max(hom, std::abs(wrap_pm_pi(g2.x[j] - gm.x[j])));
      hom = std::max(hom, std::abs(g2.p[j] - 2.0 * gm.p[j]));
    }
    r.max_homogeneity = std::max(r.max_homogeneity, hom);
  }
  return r;
}

std::vector<PhasePoint> phase_samples(int dim, int count, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> ux(0.0, kTwoPi);
  std::uniform_real_distribution<double> ur(0.5, 2.0);
  std::uniform_real_distribution<double> uth(0.0, kTwoPi);
  std::vector<PhasePoint> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    PhasePoint m;
    m.x = dim == 1 ? vec1(ux(rng)) : vec2(ux(rng), ux(rng));
    const double rad = ur(rng);
    if (dim == 1) {
      m.p = vec1(i % 2 == 0 ? rad : -rad);
    } else {
      const double th = uth(rng);
      m.p = vec2(rad * std::cos(th), rad * std::sin(th));
    }
    out.push_back(m);
  }
  return out;
}

}  // namespace gop
