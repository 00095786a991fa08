// Acceptance gate: one line per criterion, pinned tolerances, nonzero exit
// on any failure.  Each criterion carries its own runtime budget.
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "gop/canonical.hpp"
#include "gop/crossed.hpp"
#include "gop/errors.hpp"
#include "gop/flow.hpp"
#include "gop/fredholm.hpp"
#include "gop/generating.hpp"
#include "gop/group.hpp"
#include "gop/hamiltonian.hpp"
#include "gop/quantize.hpp"
#include "gop/transverse.hpp"
#include "gop/wavefront.hpp"

using namespace gop;

namespace {

const double kAlpha = kTwoPi * 0.6180339887498949;

int g_failures = 0;

std::string fmt(const char* f, ...) {
  char buf[256];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

// collects the first failed requirement of a criterion
struct Gate {
  std::string fail;
  void require(bool ok, const std::string& what) {
    if (!ok && fail.empty()) fail = what;
  }
};

void criterion(int id, const char* label, double limit_s,
               const std::function<std::string()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  std::string fail;
  try {
    fail = body();
  } catch (const std::exception& e) {
    fail = std::string("exception: ") + e.what();
  }
  const double dt =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  if (fail.empty() && dt > limit_s)
    fail = fmt("runtime %.1fs exceeds %.0fs", dt, limit_s);
  std::printf("%s  criterion %2d  %-22s  %6.2fs%s%s\n",
              fail.empty() ? "PASS" : "FAIL", id, label, dt,
              fail.empty() ? "" : "  -- ", fail.c_str());
  std::fflush(stdout);
  if (!fail.empty()) ++g_failures;
}

cplx one_amp(const Vec&, const Vec&) { return cplx(1.0); }

HomogeneousSymbol harmonic(const TorusGrid& g, const DirGrid& d, int freq,
                           cplx plus, cplx minus) {
  return HomogeneousSymbol::from_function(
      g, d, [freq, plus, minus](const Vec& x, const Vec& w) {
        return (w[0] > 0.0 ? plus : minus) * std::exp(cplx(0.0, freq * x[0]));
      });
}

// smooth but slowly converging multiplier profile; its Fourier tail decays
// like 1/m^2, so composition defects are visible across several bands
double slow_profile(double x) {
  double s = 0.0;
  for (int m = 1; m <= 40; ++m) s += std::cos(m * x) / (m * m);
  return s;
}

// max fiberwise deviation over the union support; the unit counts as a
// constant symbol at the identity, so differing representations of the same
// element compare equal
double element_diff(const CrossedElement& a, const CrossedElement& b) {
  double worst = 0.0;
  std::vector<double> params = {0.0};
  for (const auto& t : a.terms) params.push_back(t.g);
  for (const auto& t : b.terms) params.push_back(t.g);
  for (double p : params) {
    const HomogeneousSymbol* sa = a.coeff(p);
    const HomogeneousSymbol* sb = b.coeff(p);
    const cplx ua = p == 0.0 ? a.unit : cplx(0.0);
    const cplx ub = p == 0.0 ? b.unit : cplx(0.0);
    for (int c = 0; c < a.grid.cells(); ++c)
      for (int d = 0; d < a.dirs.n_dirs; ++d) {
        const cplx va = ua + (sa ? sa->at_cell(c, d) : cplx(0.0));
        const cplx vb = ub + (sb ? sb->at_cell(c, d) : cplx(0.0));
        worst = std::max(worst, std::abs(va - vb));
      }
  }
  return worst;
}

// ------------------------------------------------------------ criterion 1

std::string c1_euler_transverse() {
  Gate gate;
  struct Named {
    Hamiltonian H;
    int dim;
  };
  const std::vector<Named> hams = {
      {make_linear_hamiltonian(vec2(1.0, 0.5), 2), 2},
      {make_abs_p_hamiltonian(), 1},
      {make_quadratic_example_hamiltonian(), 2}};
  for (const Named& nh : hams) {
    const auto samples = phase_samples(nh.dim, 1000, 12345);
    double worst = 0.0;
    for (const PhasePoint& m : samples) {
      const Vec p = scale(1.0 / norm(m.p), m.p);
      worst = std::max(
          worst, std::abs(radial_pairing(nh.H, m.x, p) - nh.H.value(m.x, p)));
    }
    gate.require(worst <= 1e-10,
                 fmt("%s: Euler residual %.2e > 1e-10", nh.H.name.c_str(),
                     worst));

    const TorusGrid grid = TorusGrid::make(nh.dim, nh.dim == 1 ? 64 : 16);
    const DirGrid dirs = DirGrid::make(nh.dim, nh.dim == 1 ? 2 : 16);
    const Hamiltonian H = nh.H;
    Hamiltonian Hr = nh.H;  // same zero set through the radial pairing
    Hr.value = [H](const Vec& x, const Vec& p) {
      return radial_pairing(H, x, p);
    };
    const TransverseSet t1 = transverse_zero_set({H}, grid, dirs);
    const TransverseSet t2 = transverse_zero_set({Hr}, grid, dirs);
    gate.require(t1.mask() == t2.mask(),
                 fmt("%s: zero-set masks differ", nh.H.name.c_str()));
  }
  return gate.fail;
}

// ------------------------------------------------------------ criterion 2

std::string c2_hamjac() {
  Gate gate;
  const Hamiltonian Ha = make_abs_p_hamiltonian();
  const Hamiltonian Hq = make_quadratic_example_hamiltonian();

  const auto s1 = phase_samples(1, 200, 4242);
  const auto s2 = phase_samples(2, 200, 4243);
  const CanonicalCheck ca = check_homogeneous_canonical(flow_map(Ha, 0.25), s1);
  const CanonicalCheck cq = check_homogeneous_canonical(flow_map(Hq, 0.25), s2);
  gate.require(std::max(ca.max_residual(), ca.max_homogeneity) <= 1e-6,
               fmt("abs-p canonical residual %.2e > 1e-6",
                   std::max(ca.max_residual(), ca.max_homogeneity)));
  gate.require(std::max(cq.max_residual(), cq.max_homogeneity) <= 1e-6,
               fmt("quadratic canonical residual %.2e > 1e-6",
                   std::max(cq.max_residual(), cq.max_homogeneity)));

  // the HJ time derivative probes t + dt, so stay strictly inside the window
  const double hj_a = verify_hamilton_jacobi(GeneratingFunction(Ha, 0.2), s1);
  const double hj_q = verify_hamilton_jacobi(GeneratingFunction(Hq, 0.05), s2);
  gate.require(hj_a <= 1e-5, fmt("abs-p HJ residual %.2e > 1e-5", hj_a));
  gate.require(hj_q <= 1e-5, fmt("quadratic HJ residual %.2e > 1e-5", hj_q));

  // step halving: endpoint error against a fine-reference flow (the raw
  // canonical-identity residual saturates at finite-difference noise)
  FlowOptions coarse, fine, ref;
  coarse.step = 0.025;
  fine.step = 0.0125;
  ref.step = 0.0005;
  double ec = 0.0, ef = 0.0;
  for (const PhasePoint& m : phase_samples(2, 50, 77)) {
    const PhasePoint rc = integrate_flow(Hq, 0.25, m, coarse);
    const PhasePoint rf = integrate_flow(Hq, 0.25, m, fine);
    const PhasePoint rr = integrate_flow(Hq, 0.25, m, ref);
    ec = std::max({ec, norm(sub(rc.x, rr.x)), norm(sub(rc.p, rr.p))});
    ef = std::max({ef, norm(sub(rf.x, rr.x)), norm(sub(rf.p, rr.p))});
  }
  gate.require(ec >= 8.0 * ef,
               fmt("halving gained only %.1fx (need 8)", ec / ef));
  return gate.fail;
}

// ------------------------------------------------------------ criterion 3

std::string c3_quantize_calibration() {
  Gate gate;
  const TorusGrid g = TorusGrid::make(1, 128);
  const Hamiltonian Hv = make_linear_hamiltonian(vec1(1.0), 1);

  const GridOperator phi0 =
      quantize_canonical(GeneratingFunction(Hv, 0.0), one_amp, g);
  const double d0 = (phi0.m - CMatrix::identity(g.cells())).max_abs();
  gate.require(d0 <= 1e-10, fmt("identity deviation %.2e > 1e-10", d0));

  const double t = 0.2;
  const GridOperator phit =
      quantize_canonical(GeneratingFunction(Hv, t), one_amp, g);
  const double dt = (phit.m - shift_operator(vec1(t), g).m).max_abs();
  gate.require(dt <= 1e-8, fmt("shift deviation %.2e > 1e-8", dt));
  return gate.fail;
}

// ------------------------------------------------------------ criterion 4

std::string c4_egorov_decay() {
  Gate gate;
  const TorusGrid g = TorusGrid::make(1, 128);
  const DirGrid d = DirGrid::make(1, 2);

  // the |p|-flow splits by direction, so a direction-split symbol with a
  // slowly decaying Fourier tail leaves a defect of one order lower that the
  // band norms can actually resolve (a band-limited symbol would sit at
  // machine zero on every band and make the ratio meaningless)
  const HomogeneousSymbol a_slow = HomogeneousSymbol::from_function(
      g, d, [](const Vec& x, const Vec& w) {
        return cplx(w[0] > 0.0 ? slow_profile(x[0])
                               : 0.2 * slow_profile(x[0] + 1.0));
      });
  const Hamiltonian H = make_abs_p_hamiltonian();
  const double t = 0.1;
  const GridOperator phi =
      quantize_canonical(GeneratingFunction(H, t), one_amp, g);
  const CanonicalMap gm = flow_map(H, t);
  const double r4 = egorov_residual(phi, a_slow, gm, 4.0);
  const double r16 = egorov_residual(phi, a_slow, gm, 16.0);
  gate.require(r4 > 1e-10, "flow defect vanished; nothing measured");
  gate.require(r16 <= r4 / 3.0,
               fmt("|p|-flow residual K=16 %.2e vs K=4 %.2e", r16, r4));

  const HomogeneousSymbol a = harmonic(g, d, 1, 1.0, 1.0);
  const Vec c = vec1(kAlpha);
  const GridOperator sh = shift_operator(c, g);
  const CanonicalMap tm = translation_map(c, 1);
  for (double band : {4.0, 8.0, 16.0}) {
    const double r = egorov_residual(sh, a, tm, band);
    gate.require(r <= 1e-8,
                 fmt("translation residual %.2e > 1e-8 at K=%g", r, band));
  }
  return gate.fail;
}

// ------------------------------------------------------------ criterion 5

std::string c5_algebra_laws() {
  Gate gate;
  const TorusGrid g = TorusGrid::make(1, 64);
  const DirGrid d = DirGrid::make(1, 2);
  const GroupModel G = make_integer_rotation(kAlpha);

  CrossedElement a = CrossedElement::make(g, d, cplx(0.7, 0.1));
  a.add_term(1.0, harmonic(g, d, 1, cplx(0.5, 0.0), cplx(0.2, 0.1)), G);
  a.add_term(-2.0, harmonic(g, d, 0, cplx(0.0, 0.3), cplx(0.1, 0.0)), G);
  CrossedElement b = CrossedElement::make(g, d, cplx(0.2, -0.4));
  b.add_term(1.0, harmonic(g, d, 2, cplx(0.3, 0.2), cplx(0.0, 0.1)), G);
  b.add_term(3.0, harmonic(g, d, -1, cplx(0.1, 0.0), cplx(0.4, 0.0)), G);
  CrossedElement c = CrossedElement::make(g, d, cplx(-0.3, 0.0));
  c.add_term(-1.0, harmonic(g, d, 1, cplx(0.0, 0.2), cplx(0.3, 0.3)), G);

  const double assoc = element_diff(convolve(convolve(a, b, G), c, G),
                                    convolve(a, convolve(b, c, G), G));
  gate.require(assoc <= 1e-12, fmt("associativity defect %.2e", assoc));

  const double star = element_diff(
      involution(convolve(a, b, G), G),
      convolve(involution(b, G), involution(a, G), G));
  gate.require(star <= 1e-12, fmt("star anti-homomorphism defect %.2e", star));
  const double invol = element_diff(involution(involution(a, G), G), a);
  gate.require(invol <= 1e-12, fmt("involution period defect %.2e", invol));

  // covariance: conjugating by delta_1 transports every fiber by act(1)
  CrossedElement dh = CrossedElement::make(g, d);
  dh.add_term(1.0, HomogeneousSymbol(g, d, 1.0), G);
  CrossedElement dhinv = CrossedElement::make(g, d);
  dhinv.add_term(-1.0, HomogeneousSymbol(g, d, 1.0), G);
  const CrossedElement conj = convolve(convolve(dh, a, G), dhinv, G);
  CrossedElement transported = CrossedElement::make(g, d, a.unit);
  for (const auto& term : a.terms)
    transported.add_term(term.g, egorov_transport(term.a, G.act(1.0)), G);
  const double cov = element_diff(conj, transported);
  gate.require(cov <= 1e-12, fmt("covariance defect %.2e", cov));

  // quantitative composition: assemble(a).assemble(b) vs assemble(a*b)
  const TorusGrid gq = TorusGrid::make(1, 128);
  const DirGrid dq = DirGrid::make(1, 2);
  const Representation rep = shift_representation(G, gq);
  auto split = [&](double wp, double wm) {
    return HomogeneousSymbol::from_function(
        gq, dq, [wp, wm](const Vec& x, const Vec& w) {
          return cplx(w[0] > 0.0 ? wp * slow_profile(x[0]) : wm, 0.0);
        });
  };
  CrossedElement qa = CrossedElement::make(gq, dq, 1.0);
  qa.add_term(1.0, split(0.4, 0.1), G);
  CrossedElement qb = CrossedElement::make(gq, dq, cplx(0.3, 0.0));
  qb.add_term(1.0, split(0.25, -0.2), G);
  const GridOperator A = assemble_G_operator(qa, G, rep, gq);
  const GridOperator B = assemble_G_operator(qb, G, rep, gq);
  const GridOperator C =
      assemble_G_operator(convolve(qa, qb, G), G, rep, gq);
  const GridOperator R{gq, A.m * B.m - C.m, "compose-defect"};
  const double r4 = band_norm(R, 4.0);
  const double r16 = band_norm(R, 16.0);
  gate.require(r4 > 1e-14, "composition defect vanished; nothing measured");
  gate.require(r4 >= 1.5 * r16,
               fmt("defect K=4 %.2e vs K=16 %.2e (< 1.5x)", r4, r16));
  return gate.fail;
}

// ------------------------------------------------------------ criterion 6

std::string c6_trajectory_ellipticity() {
  Gate gate;
  const TorusGrid g = TorusGrid::make(1, 64);
  const DirGrid d = DirGrid::make(1, 2);
  const GroupModel G = make_integer_rotation(kAlpha);
  std::vector<CospherePoint> bases;
  for (int j = 0; j < 16; ++j)
    bases.push_back({vec1(kTwoPi * j / 16.0), vec1(j % 2 == 0 ? 1.0 : -1.0)});
  const std::vector<int> windows = {8, 16, 32, 64};

  CrossedElement good = CrossedElement::make(g, d, 1.0);
  good.add_term(1.0, HomogeneousSymbol(g, d, 0.5), G);
  const SectionReport rg =
      finite_section_invertibility(good, G, bases, windows, 1e-3);
  gate.require(rg.verdict == "elliptic",
               "1 + 0.5 delta verdict: " + rg.verdict);
  for (const SectionProfile& prof : rg.profiles)
    for (double s : prof.sigma_min)
      gate.require(s >= 0.45, fmt("section sigma_min %.3f < 0.45", s));

  CrossedElement badel = CrossedElement::make(g, d, 1.0);
  badel.add_term(1.0, HomogeneousSymbol(g, d, -1.0), G);
  const SectionReport rb =
      finite_section_invertibility(badel, G, bases, windows, 1e-3);
  gate.require(rb.verdict == "degenerate",
               "1 - delta verdict: " + rb.verdict);
  for (const SectionProfile& prof : rb.profiles)
    gate.require(prof.sigma_min.back() <= 0.5 * prof.sigma_min.front(),
                 fmt("sigma_min(64)=%.3e not half of sigma_min(8)=%.3e",
                     prof.sigma_min.back(), prof.sigma_min.front()));
  return gate.fail;
}

// ------------------------------------------------------------ criterion 7

std::string c7_fredholm() {
  Gate gate;
  std::vector<GridOperator> ops;
  for (int n : {64, 128, 256}) {
    const TorusGrid g = TorusGrid::make(1, n);
    ops.push_back(quantize_symbol(
        HomogeneousSymbol::from_function(
            g, DirGrid::make(1, 2),
            [](const Vec& x, const Vec& w) {
              return w[0] > 0.0 ? std::exp(cplx(0.0, x[0])) : cplx(1.0);
            }),
        g));
  }
  const IndexReport rep = numerical_index(ops, 1e-6);
  gate.require(rep.verdict == "stable", "index verdict: " + rep.verdict);
  gate.require(rep.index_estimate == -1,
               fmt("index estimate %ld != -1", (long)rep.index_estimate));
  for (std::size_t i = 0; i < rep.gap_ratio.size(); ++i)
    gate.require(rep.gap_ratio[i] >= 10.0,
                 fmt("gap ratio %.1f < 10 at size %d", rep.gap_ratio[i],
                     rep.sizes[i]));

  // almost inverse of 1 + 0.5 Shift: residuals keep falling across bands
  const TorusGrid g = TorusGrid::make(1, 128);
  const DirGrid d = DirGrid::make(1, 2);
  const GroupModel G = make_integer_rotation(kAlpha);
  CrossedElement a = CrossedElement::make(g, d);
  a.add_term(1.0, HomogeneousSymbol(g, d, 0.5), G);
  const InverseReport inv = symbol_inverse(a, G, 1e-10, 64.0);
  CrossedElement unitized = a;
  unitized.unit += 1.0;
  const Representation rep_sh = shift_representation(G, g);
  const GridOperator D = assemble_G_operator(unitized, G, rep_sh, g);
  const AlmostInverseReport ai = almost_inverse(D, inv.b, G, rep_sh, 8);
  gate.require(ai.left_at_band <= 1e-8,
               fmt("left residual %.2e > 1e-8 at K=8", ai.left_at_band));
  gate.require(ai.right_at_band <= 1e-8,
               fmt("right residual %.2e > 1e-8 at K=8", ai.right_at_band));
  gate.require(ai.left_decreasing && ai.right_decreasing,
               "almost-inverse residuals grew from K=8 to K=16");
  gate.require(!ai.calculus_failure, "calculus failure flagged");
  return gate.fail;
}

// --------------------------------------------------------- criteria 8 + 9

struct WavefrontTrio {
  double identity = 0.0;
  double rotation = 0.0;
  double averaged = 0.0;
  bool pass = false;
};

WavefrontTrio containment_at(int n, const GroupModel& L) {
  const TorusGrid g = TorusGrid::make(1, n);
  const DirGrid d = DirGrid::make(1, 2);
  WavefrontTrio out;
  out.pass = true;
  auto fraction = [&](const CrossedElement& elt, const GroupModel& G) {
    const Representation rep = shift_representation(G, g);
    const GridOperator op = assemble_G_operator(elt, G, rep, g);
    const ContainmentReport r = containment_report(
        wavefront_estimate(op), predicted_wavefront(elt, G), 2, 0, 0.05);
    out.pass = out.pass && r.pass;
    return r.outside_fraction;
  };

  const CrossedElement ident = CrossedElement::make(g, d, 1.0);
  out.identity = fraction(ident, make_trivial_group(1));

  const GroupModel R = make_integer_rotation(kAlpha);
  CrossedElement rot = CrossedElement::make(g, d);
  rot.add_term(1.0, HomogeneousSymbol(g, d, 1.0), R);
  out.rotation = fraction(rot, R);

  CrossedElement avg = CrossedElement::make(g, d);
  const int hn = (int)std::lround(L.window / L.step);
  for (int k = -hn; k <= hn; ++k) {
    const double t = k * L.step;
    const double w = bump(t, L.window);
    if (w > 0.0) avg.add_term(t, HomogeneousSymbol(g, d, w), L);
  }
  out.averaged = fraction(avg, L);
  return out;
}

std::string c8_wavefront_containment() {
  Gate gate;
  // quadrature fine enough that the node comb stays beyond the band the
  // estimator resolves on both grids
  const GroupModel L =
      make_line_flow(make_linear_hamiltonian(vec1(1.0), 1), 2.0, 64);
  const WavefrontTrio f128 = containment_at(128, L);
  const WavefrontTrio f256 = containment_at(256, L);
  gate.require(f128.pass,
               fmt("N=128 fractions %.3f/%.3f/%.3f exceed 0.05", f128.identity,
                   f128.rotation, f128.averaged));
  gate.require(f256.identity <= f128.identity + 1e-12 &&
                   f256.rotation <= f128.rotation + 1e-12 &&
                   f256.averaged <= f128.averaged + 1e-12,
               fmt("fractions grew at N=256: %.3f/%.3f/%.3f", f256.identity,
                   f256.rotation, f256.averaged));
  return gate.fail;
}

std::string c9_smoothing() {
  Gate gate;
  const GroupModel L =
      make_line_flow(make_linear_hamiltonian(vec1(1.0), 1), 2.0, 64);
  const std::vector<double> bands = {2.0, 4.0, 8.0, 16.0};
  auto exponent_at = [&](int n) {
    const TorusGrid g = TorusGrid::make(1, n);
    const DirGrid d = DirGrid::make(1, 2);
    CrossedElement avg = CrossedElement::make(g, d);
    const int hn = (int)std::lround(L.window / L.step);
    for (int k = -hn; k <= hn; ++k) {
      const double t = k * L.step;
      const double w = bump(t, L.window);
      if (w > 0.0) avg.add_term(t, HomogeneousSymbol(g, d, w), L);
    }
    const Representation rep = shift_representation(L, g);
    return smoothing_check(assemble_G_operator(avg, L, rep, g), bands);
  };
  const SmoothingReport s128 = exponent_at(128);
  const SmoothingReport s256 = exponent_at(256);
  gate.require(s128.decreasing && s128.exponent >= 1.0,
               fmt("N=128 exponent %.2f < 1 or not decreasing",
                   s128.exponent));
  gate.require(std::abs(s256.exponent - s128.exponent) <= 0.3,
               fmt("exponent drifted %.2f -> %.2f", s128.exponent,
                   s256.exponent));
  return gate.fail;
}

// ----------------------------------------------------------- criterion 10

std::string c10_stationary_phase() {
  Gate gate;
  const TorusGrid g = TorusGrid::make(2, 8);
  const DirGrid d = DirGrid::make(2, 16);
  const Vec v = vec2(1.0, 0.0);
  const Hamiltonian H = make_linear_hamiltonian(v, 2);
  const GroupModel L = make_line_flow(H, 0.5, 4);
  const TransverseSet ts = transverse_zero_set({H}, g, d);

  CrossedElement e = CrossedElement::make(g, d);
  for (int k = -4; k <= 4; ++k) {
    const double t = k * L.step;
    e.add_term(t, HomogeneousSymbol(g, d, std::exp(-(t / 0.3) * (t / 0.3))),
               L);
  }
  const WavefrontSet pred = predicted_wavefront(e, L, &ts);

  PhaseFamily fam;
  fam.dim = 2;
  fam.t_min = -0.5;
  fam.t_max = 0.5;
  fam.n_t = 9;
  fam.n_theta = 16;
  fam.psi = [v](const Vec& x, const Vec& xp, double t, const Vec& th) {
    return th[0] * wrap_pm_pi(x[0] - xp[0] - v[0] * t) +
           th[1] * wrap_pm_pi(x[1] - xp[1] - v[1] * t);
  };
  fam.amplitude = [](const Vec&, const Vec&, double t, const Vec&) {
    return std::exp(-(t / 0.3) * (t / 0.3));
  };
  const WavefrontSet stat = stationary_phase_support(fam, g, d, {});
  gate.require(!pred.empty() && !stat.empty(), "a route produced no set");

  // stationarity in t enforces H(x', p') = 0: only transverse covectors
  for (const auto& [key, m] : stat.mass) {
    int i, dd, j, dd2;
    stat.unpack(key, i, dd, j, dd2);
    gate.require(std::abs(dot(v, d.dir(dd2))) <= 0.5,
                 "marked covector not transverse to the flow");
    (void)i;
    (void)j;
    (void)m;
  }
  gate.require(containment_report(stat, pred, 2).pass,
               "stationary set leaks outside the predicted set");
  gate.require(containment_report(pred, stat, 2).pass,
               "predicted set leaks outside the stationary set");
  return gate.fail;
}

}  // namespace

int main() {
  criterion(1, "euler-transverse", 1.0, c1_euler_transverse);
  criterion(2, "hom4-hamilton-jacobi", 10.0, c2_hamjac);
  criterion(3, "quantize-calibration", 30.0, c3_quantize_calibration);
  criterion(4, "egorov-decay", 60.0, c4_egorov_decay);
  criterion(5, "algebra-laws", 60.0, c5_algebra_laws);
  criterion(6, "trajectory-ellipticity", 30.0, c6_trajectory_ellipticity);
  criterion(7, "fredholm-evidence", 120.0, c7_fredholm);
  criterion(8, "wavefront-containment", 300.0, c8_wavefront_containment);
  criterion(9, "smoothing-decay", 300.0, c9_smoothing);
  criterion(10, "stationary-phase", 30.0, c10_stationary_phase);
  std::printf("acceptance: %d/10 criteria passed\n", 10 - g_failures);
  return g_failures == 0 ? 0 : 1;
}
