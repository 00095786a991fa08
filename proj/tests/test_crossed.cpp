#include <cmath>
#include <cstdio>
#include <random>

#include "doctest.h"
#include "gop/crossed.hpp"
#include "gop/errors.hpp"
#include "gop/quantize.hpp"
#include "gop/transverse.hpp"

using namespace gop;

namespace {

const double kAlpha = kTwoPi * 0.6180339887498949;

HomogeneousSymbol band_symbol(const TorusGrid& g, const DirGrid& d, int freq,
                              cplx plus, cplx minus) {
  return HomogeneousSymbol::from_function(
      g, d, [freq, plus, minus](const Vec& x, const Vec& w) {
        const cplx e = std::polar(1.0, freq * x[0]);
        return e * (w[0] > 0 ? plus : minus);
      });
}

double elt_distance(const CrossedElement& a, const CrossedElement& b,
                    const GroupModel& G) {
  CrossedElement d = a;
  d.unit -= b.unit;
  for (const CrossedTerm& t : b.terms) {
    HomogeneousSymbol s = t.a;
    s *= cplx(-1.0, 0.0);
    d.add_term(t.g, s, G);
  }
  return d.coeff_norm();
}

}  // namespace

TEST_CASE("group models: lattice snapping, composition, Haar weights") {
  const GroupModel Z = make_integer_rotation(kAlpha);
  CHECK(Z.snap(3.0 + 1e-12) == 3.0);
  CHECK(Z.compose(2.0, -5.0) == -3.0);
  CHECK(Z.inverse(4.0) == -4.0);
  CHECK(Z.haar_weight(7.0) == 1.0);
  CHECK_THROWS_AS(Z.snap(0.5), UsageError);

  const GroupModel C = make_cyclic_rotation(8);
  CHECK(C.snap(-1.0) == 7.0);
  CHECK(C.compose(6.0, 5.0) == 3.0);
  CHECK(C.inverse(3.0) == 5.0);

  const GroupModel L =
      make_line_flow(make_linear_hamiltonian(vec1(1.0), 1), 0.5, 5);
  CHECK(L.step == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(L.snap(0.3) == 3 * L.step);
  CHECK(L.haar_weight(0.2) == doctest::Approx(0.1));
  CHECK(L.haar_weight(0.5) == doctest::Approx(0.05));  // trapezoid endpoint
  CHECK_THROWS_AS(L.snap(0.13), UsageError);          // off the lattice
  CHECK_THROWS_AS(L.snap(0.7), TruncationError);      // outside the window

  const GroupModel T = make_trivial_group(2);
  CHECK(T.snap(0.0) == 0.0);
  CHECK_THROWS_AS(T.snap(1.0), UsageError);
}

TEST_CASE("group action is a homomorphism on samples") {
  const auto samples = phase_samples(1, 20, 11);
  const GroupModel Z = make_integer_rotation(kAlpha);
  const GroupModel L =
      make_line_flow(make_linear_hamiltonian(vec1(0.7), 1), 0.5, 5);
  for (const GroupModel* G : {&Z, &L}) {
    const double u = (G->kind == GroupKind::Line) ? G->step : 1.0;
    const CanonicalMap g = G->act(2 * u), h = G->act(u), gh = G->act(3 * u);
    for (const PhasePoint& m : samples) {
      const PhasePoint a = g.forward(h.forward(m));
      const PhasePoint b = gh.forward(m);
      CHECK(std::abs(wrap_pm_pi(a.x[0] - b.x[0])) <= 1e-8);
      CHECK(std::abs(a.p[0] - b.p[0]) <= 1e-8);
    }
    const CanonicalMap e = G->act(0.0);
    const PhasePoint m0 = samples.front();
    const PhasePoint em = e.forward(m0);
    CHECK(std::abs(wrap_pm_pi(em.x[0] - m0.x[0])) <= 1e-12);
    CHECK(std::abs(em.p[0] - m0.p[0]) <= 1e-12);
  }
  // q2 flow nodes compose to 1e-8 as well (RK4 additivity)
  const GroupModel Q =
      make_line_flow(make_quadratic_example_hamiltonian(), 0.1, 4);
  const CanonicalMap g1 = Q.act(Q.step), g2 = Q.act(2 * Q.step);
  for (const PhasePoint& m : phase_samples(2, 10, 5)) {
    const PhasePoint a = g1.forward(g1.forward(m));
    const PhasePoint b = g2.forward(m);
    CHECK(std::abs(wrap_pm_pi(a.x[0] - b.x[0])) <= 1e-8);
    CHECK(std::abs(wrap_pm_pi(a.x[1] - b.x[1])) <= 1e-8);
  }
}

TEST_CASE("convolution: fiber products, group law, mixed support") {
  const TorusGrid g = TorusGrid::make(1, 32);
  const DirGrid d = DirGrid::make(1, 2);
  const GroupModel G = make_integer_rotation(kAlpha);
  const HomogeneousSymbol f = band_symbol(g, d, 1, 1.0, cplx(0.0, 0.5));
  const HomogeneousSymbol h = band_symbol(g, d, 2, cplx(0.3, -1.0), 1.0);
  const HomogeneousSymbol one(g, d, 1.0);

  // fiber multiplication at the identity
  CrossedElement a = CrossedElement::make(g, d);
  a.add_term(0.0, f, G);
  CrossedElement b = CrossedElement::make(g, d);
  b.add_term(0.0, h, G);
  const CrossedElement ab = convolve(a, b, G);
  REQUIRE(ab.terms.size() == 1);
  CHECK(ab.terms[0].g == 0.0);
  CHECK(elt_distance(ab, [&] {
          CrossedElement e = CrossedElement::make(g, d);
          e.add_term(0.0, f * h, G);
          return e;
        }(), G) <= 1e-12);

  // group law on pure shifts
  CrossedElement dg = CrossedElement::make(g, d);
  dg.add_term(2.0, one, G);
  CrossedElement dh = CrossedElement::make(g, d);
  dh.add_term(3.0, one, G);
  const CrossedElement dgh = convolve(dg, dh, G);
  REQUIRE(dgh.terms.size() == 1);
  CHECK(dgh.terms[0].g == 5.0);
  CHECK(dgh.terms[0].a.max_abs() == doctest::Approx(1.0).epsilon(1e-12));

  // (de(x)f + dg(x)u) * (de(x)v) = de(x)(fv) + dg(x)(u (v o g^{-1}))
  const HomogeneousSymbol u = band_symbol(g, d, 1, cplx(0.0, 1.0), 0.25);
  const HomogeneousSymbol v = band_symbol(g, d, 3, 1.0, cplx(-0.5, 0.5));
  CrossedElement lhs1 = CrossedElement::make(g, d);
  lhs1.add_term(0.0, f, G);
  lhs1.add_term(1.0, u, G);
  CrossedElement rhs1 = CrossedElement::make(g, d);
  rhs1.add_term(0.0, v, G);
  const CrossedElement got = convolve(lhs1, rhs1, G);
  CrossedElement want = CrossedElement::make(g, d);
  want.add_term(0.0, f * v, G);
  want.add_term(1.0, u * egorov_transport(v, G.act(1.0)), G);
  CHECK(elt_distance(got, want, G) <= 1e-12);

  // units multiply and cross-distribute
  CrossedElement wa = CrossedElement::make(g, d, cplx(2.0, 0.0));
  wa.add_term(1.0, u, G);
  CrossedElement wb = CrossedElement::make(g, d, cplx(0.0, 1.0));
  const CrossedElement wab = convolve(wa, wb, G);
  CHECK(std::abs(wab.unit - cplx(0.0, 2.0)) <= 1e-15);
  REQUIRE(wab.terms.size() == 1);
  CHECK(elt_distance(wab, [&] {
          CrossedElement e = CrossedElement::make(g, d, cplx(0.0, 2.0));
          HomogeneousSymbol s = u;
          s *= cplx(0.0, 1.0);
          e.add_term(1.0, s, G);
          return e;
        }(), G) <= 1e-15);
}

TEST_CASE("involution: period two, anti-homomorphism, a* a positivity fiber") {
  const TorusGrid g = TorusGrid::make(1, 32);
  const DirGrid d = DirGrid::make(1, 2);
  const GroupModel G = make_integer_rotation(kAlpha);
  const HomogeneousSymbol u = band_symbol(g, d, 1, cplx(0.7, 0.4), 1.0);
  const HomogeneousSymbol f = band_symbol(g, d, 2, 1.0, cplx(0.0, -0.6));

  CrossedElement a = CrossedElement::make(g, d, cplx(0.3, -0.2));
  a.add_term(2.0, u, G);
  a.add_term(-1.0, f, G);
  CHECK(elt_distance(involution(involution(a, G), G), a, G) <= 1e-11);

  CrossedElement b = CrossedElement::make(g, d);
  b.add_term(1.0, f, G);
  const CrossedElement lhs = involution(convolve(a, b, G), G);
  const CrossedElement rhs = convolve(involution(b, G), involution(a, G), G);
  CHECK(elt_distance(lhs, rhs, G) <= 1e-11);

  // a = dg(x)u -> a* a = de(x)(|u|^2 o g)
  CrossedElement c = CrossedElement::make(g, d);
  c.add_term(2.0, u, G);
  const CrossedElement cc = convolve(involution(c, G), c, G);
  REQUIRE(cc.terms.size() == 1);
  CHECK(cc.terms[0].g == 0.0);
  const HomogeneousSymbol uu = u * u.conj();
  const HomogeneousSymbol moved = egorov_transport(uu, G.act(-2.0));
  CrossedElement want = CrossedElement::make(g, d);
  want.add_term(0.0, moved, G);
  CHECK(elt_distance(cc, want, G) <= 1e-11);
}

TEST_CASE("covariance: shift conjugation transports the fiber symbol") {
  const TorusGrid g = TorusGrid::make(1, 32);
  const DirGrid d = DirGrid::make(1, 2);
  const GroupModel G = make_integer_rotation(kAlpha);
  const HomogeneousSymbol f = band_symbol(g, d, 1, 1.0, cplx(0.2, 0.9));
  const HomogeneousSymbol one(g, d, 1.0);

  CrossedElement sg = CrossedElement::make(g, d);
  sg.add_term(1.0, one, G);
  CrossedElement sginv = CrossedElement::make(g, d);
  sginv.add_term(-1.0, one, G);
  CrossedElement mid = CrossedElement::make(g, d);
  mid.add_term(0.0, f, G);

  const CrossedElement conj =
      convolve(convolve(sg, mid, G), sginv, G);
  CrossedElement want = CrossedElement::make(g, d);
  want.add_term(0.0, egorov_transport(f, G.act(1.0)), G);
  CHECK(elt_distance(conj, want, G) <= 1e-12);
}

TEST_CASE("associativity holds on random elements with small support") {
  const TorusGrid g = TorusGrid::make(1, 16);
  const DirGrid d = DirGrid::make(1, 2);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  auto random_elt = [&](const GroupModel& G, double spacing) {
    CrossedElement e = CrossedElement::make(g, d, cplx(U(rng), U(rng)));
    for (int k = -1; k <= 1; ++k) {
      const HomogeneousSymbol s = band_symbol(
          g, d, (int)std::lround(2 * U(rng)), cplx(U(rng), U(rng)),
          cplx(U(rng), U(rng)));
      e.add_term(k * spacing, s, G);
    }
    return e;
  };
  const GroupModel Z = make_integer_rotation(kAlpha);
  const GroupModel L =
      make_line_flow(make_linear_hamiltonian(vec1(1.0), 1), 0.5, 5);
  for (const GroupModel* G : {&Z, &L}) {
    const double sp = (G->kind == GroupKind::Line) ? G->step : 1.0;
    for (int rep = 0; rep < 3; ++rep) {
      const CrossedElement a = random_elt(*G, sp);
      const CrossedElement b = random_elt(*G, sp);
      const CrossedElement c = random_elt(*G, sp);
      const CrossedElement l = convolve(convolve(a, b, *G), c, *G);
      const CrossedElement r = convolve(a, convolve(b, c, *G), *G);
      CHECK(elt_distance(l, r, *G) <= 1e-8);
    }
  }
  // Lie window overflow is reported as truncation
  CrossedElement far = CrossedElement::make(g, d);
  far.add_term(0.4, HomogeneousSymbol(g, d, 1.0), L);
  CHECK_THROWS_AS(convolve(far, far, L), TruncationError);
}

TEST_CASE("restriction to the transverse set masks fibers") {
  const TorusGrid g = TorusGrid::make(2, 8);
  const DirGrid d = DirGrid::make(2, 16);
  const Hamiltonian H = make_linear_hamiltonian(vec2(1.0, 0.0), 2);
  const TransverseSet ts = transverse_zero_set({H}, g, d);
  REQUIRE(ts.count() == 2L * g.cells());
  const GroupModel L = make_line_flow(H, 0.5, 5);

  // direction-dependent, x-constant coefficients stay exact under the mask
  auto dir_symbol = [&](cplx c0, cplx c1) {
    return HomogeneousSymbol::from_function(
        g, d, [c0, c1](const Vec&, const Vec& w) {
          return c0 + c1 * cplx(w[0] * w[0] - w[1] * w[1], w[0] * w[1]);
        });
  };
  CrossedElement a = CrossedElement::make(g, d, 1.0);
  a.add_term(L.step, dir_symbol(1.0, cplx(0.5, 0.2)), L);
  const CrossedElement ra = restrict_to_transverse(a, ts);
  long nonzero = 0;
  for (int c = 0; c < g.cells(); ++c)
    for (int dd = 0; dd < d.n_dirs; ++dd) {
      const cplx v = ra.terms[0].a.at_cell(c, dd);
      if (std::abs(v) > 0.0) {
        ++nonzero;
        CHECK(ts.at(c, dd));
        CHECK(v == a.terms[0].a.at_cell(c, dd));
      }
    }
  CHECK(nonzero == ts.count());

  // restriction is an algebra map on the transverse cells
  CrossedElement b = CrossedElement::make(g, d);
  b.add_term(2 * L.step, dir_symbol(cplx(0.0, 1.0), 0.3), L);
  const CrossedElement lhs = restrict_to_transverse(convolve(a, b, L), ts);
  const CrossedElement rhs =
      convolve(restrict_to_transverse(a, ts), restrict_to_transverse(b, ts), L);
  for (const CrossedTerm& t : lhs.terms) {
    const HomogeneousSymbol* o = rhs.coeff(t.g);
    REQUIRE(o != nullptr);
    for (int c = 0; c < g.cells(); ++c)
      for (int dd = 0; dd < d.n_dirs; ++dd)
        if (ts.at(c, dd))
          CHECK(std::abs(t.a.at_cell(c, dd) - o->at_cell(c, dd)) <= 1e-10);
  }

  // empty transverse set zeroes every coefficient
  const Hamiltonian H1 = make_linear_hamiltonian(vec1(1.0), 1);
  const TorusGrid g1 = TorusGrid::make(1, 16);
  const DirGrid d1 = DirGrid::make(1, 2);
  const TransverseSet empty_ts = transverse_zero_set({H1}, g1, d1);
  REQUIRE(empty_ts.empty());
  CrossedElement e1 = CrossedElement::make(g1, d1, cplx(0.4, 0.0));
  e1.add_term(0.0, HomogeneousSymbol(g1, d1, 1.0), make_trivial_group(1));
  const CrossedElement re1 = restrict_to_transverse(e1, empty_ts);
  CHECK(re1.terms[0].a.max_abs() == 0.0);
  CHECK(re1.unit == e1.unit);
}

TEST_CASE("trajectory symbol: identity, ladder, Neumann bound") {
  const TorusGrid g = TorusGrid::make(1, 32);
  const DirGrid d = DirGrid::make(1, 2);
  const GroupModel G = make_integer_rotation(kAlpha);
  const CospherePoint base{vec1(0.9), vec1(1.0)};
  const HomogeneousSymbol one(g, d, 1.0);

  CrossedElement e = CrossedElement::make(g, d);
  e.add_term(0.0, one, G);
  const TrajectoryOperator Te = trajectory_symbol(e, G, base, 6);
  CHECK((Te.m - CMatrix::identity(13)).max_abs() <= 1e-13);

  CrossedElement s = CrossedElement::make(g, d);
  s.add_term(1.0, one, G);
  const TrajectoryOperator Ts = trajectory_symbol(s, G, base, 6);
  for (std::size_t h = 0; h < 13; ++h)
    for (std::size_t k = 0; k < 13; ++k)
      CHECK(std::abs(Ts.m(h, k) - (h == k + 1 ? 1.0 : 0.0)) <= 1e-13);
  const auto sv = Ts.m.singular_values();
  for (std::size_t i = 0; i + 1 < sv.size(); ++i) CHECK(sv[i] <= 1.0 + 1e-12);
  CHECK(sv.back() <= 1e-12);  // truncation boundary

  // 1 + c shift: sigma_min >= 1 - |c| uniformly in the window
  CrossedElement n = CrossedElement::make(g, d, 1.0);
  HomogeneousSymbol half(g, d, 0.5);
  n.add_term(1.0, half, G);
  const TrajectoryOperator Tn = trajectory_symbol(n, G, base, 64);
  CHECK(Tn.m.singular_values().back() >= 0.5 - 1e-12);

  CHECK_THROWS_AS(trajectory_symbol(n, G, base, 0), UsageError);
  CrossedElement wide = CrossedElement::make(g, d);
  wide.add_term(5.0, one, G);
  CHECK_THROWS_AS(trajectory_symbol(wide, G, base, 3), UsageError);
  CHECK_THROWS_AS(
      trajectory_symbol(e, G, CospherePoint{vec1(0.0), vec1(0.0)}, 3),
      DomainError);
}

TEST_CASE("trajectory symbol represents the convolution on interior rows") {
  const TorusGrid g = TorusGrid::make(1, 32);
  const DirGrid d = DirGrid::make(1, 2);
  const GroupModel G = make_integer_rotation(kAlpha);
  const CospherePoint base{vec1(2.2), vec1(-1.0)};

  CrossedElement a = CrossedElement::make(g, d, cplx(0.4, 0.1));
  a.add_term(1.0, band_symbol(g, d, 1, 1.0, cplx(0.3, 0.3)), G);
  a.add_term(-1.0, band_symbol(g, d, 0, cplx(0.5, 0.0), 1.0), G);
  CrossedElement b = CrossedElement::make(g, d, cplx(-0.2, 0.6));
  b.add_term(1.0, band_symbol(g, d, 2, cplx(0.0, 1.0), 0.7), G);

  const int W = 8;
  const TrajectoryOperator Ta = trajectory_symbol(a, G, base, W);
  const TrajectoryOperator Tb = trajectory_symbol(b, G, base, W);
  const TrajectoryOperator Tab =
      trajectory_symbol(convolve(a, b, G), G, base, W);
  const CMatrix prod = Ta.m * Tb.m;
  for (std::size_t h = 0; h < Tab.params.size(); ++h) {
    if (std::abs(Tab.params[h]) > W - 1) continue;  // a has radius 1
    for (std::size_t k = 0; k < Tab.params.size(); ++k)
      CHECK(std::abs(prod(h, k) - Tab.m(h, k)) <= 1e-8);
  }
}

TEST_CASE("trajectory symbol: line sections carry symmetrized weights") {
  const TorusGrid g = TorusGrid::make(1, 16);
  const DirGrid d = DirGrid::make(1, 2);
  const Hamiltonian H = make_linear_hamiltonian(vec1(1.0), 1);
  const GroupModel L = make_line_flow(H, 0.5, 5);
  const CospherePoint base{vec1(1.3), vec1(1.0)};

  CrossedElement e = CrossedElement::make(g, d, 1.0);
  const HomogeneousSymbol c3(g, d, cplx(0.3, 0.0));
  e.add_term(2 * L.step, c3, L);
  const TrajectoryOperator T = trajectory_symbol(e, L, base, 5);
  REQUIRE(T.params.size() == 11);
  for (std::size_t h = 0; h < 11; ++h)
    for (std::size_t k = 0; k < 11; ++k) {
      cplx want = (h == k) ? 1.0 : 0.0;
      if ((long)h - (long)k == 2) {
        const double wh = L.haar_weight(T.params[h]);
        const double wk = L.haar_weight(T.params[k]);
        want += cplx(0.3 * std::sqrt(wh * wk), 0.0);
      }
      CHECK(std::abs(T.m(h, k) - want) <= 1e-12);
    }
}

TEST_CASE("finite sections: elliptic, degenerate, inconclusive verdicts") {
  const TorusGrid g = TorusGrid::make(1, 32);
  const DirGrid d = DirGrid::make(1, 2);
  const GroupModel G = make_integer_rotation(kAlpha);
  std::vector<CospherePoint> bases;
  for (int k = 0; k < 4; ++k)
    bases.push_back({vec1(0.3 + 1.4 * k), vec1(k % 2 ? 1.0 : -1.0)});
  const std::vector<int> windows = {8, 16, 32, 64};

  CrossedElement good = CrossedElement::make(g, d, 1.0);
  good.add_term(1.0, HomogeneousSymbol(g, d, 0.5), G);
  const SectionReport rg =
      finite_section_invertibility(good, G, bases, windows);
  CHECK(rg.verdict == "elliptic");
  for (const SectionProfile& p : rg.profiles)
    for (double s : p.sigma_min) CHECK(s >= 0.45);

  CrossedElement bad = CrossedElement::make(g, d, 1.0);
  bad.add_term(1.0, HomogeneousSymbol(g, d, -1.0), G);
  const SectionReport rb = finite_section_invertibility(bad, G, bases, windows);
  CHECK(rb.verdict == "degenerate");
  for (const SectionProfile& p : rb.profiles) {
    CHECK(p.sigma_min.back() <= 0.25 * p.sigma_min.front());  // ~ O(1/W)
    CHECK(p.sigma_min.back() <= 1.0 / std::sqrt(129.0) + 1e-9);
  }

  const SectionReport ri =
      finite_section_invertibility(good, G, bases, windows, 0.6);
  CHECK(ri.verdict == "inconclusive");

  CHECK_THROWS_AS(finite_section_invertibility(good, G, bases, {16, 8}),
                  UsageError);
  CHECK_THROWS_AS(finite_section_invertibility(good, G, {}, windows),
                  UsageError);
}

TEST_CASE("symbol inverse: scalar series, fiberwise division, failure") {
  const TorusGrid g = TorusGrid::make(1, 8);
  const DirGrid d = DirGrid::make(1, 2);
  const GroupModel G = make_integer_rotation(kAlpha);

  // zero element inverts to zero
  const CrossedElement z = CrossedElement::make(g, d);
  const InverseReport rz = symbol_inverse(z, G);
  CHECK(std::abs(rz.b.unit) <= 1e-15);
  CHECK(rz.b.terms.empty());
  CHECK(rz.right_residual <= 1e-15);

  // geometric series against the truncation cap
  CrossedElement a = CrossedElement::make(g, d);
  a.add_term(1.0, HomogeneousSymbol(g, d, 0.5), G);
  const InverseReport ra = symbol_inverse(a, G, 0.05);
  CHECK(std::abs(ra.b.unit) <= 1e-12);
  for (int k = 1; k <= 4; ++k) {
    const HomogeneousSymbol* c = ra.b.coeff((double)k);
    REQUIRE(c != nullptr);
    const double want = std::pow(-0.5, k);
    CHECK(std::abs(c->at_cell(0, 0) - want) <= 1e-12);
  }
  CHECK(ra.right_residual <= std::pow(0.5, 5) + 1e-12);
  CHECK(ra.right_residual >= std::pow(0.5, 5) - 1e-12);
  CHECK(ra.left_residual <= std::pow(0.5, 5) + 1e-12);

  // with a wide cap the same series converges below 1e-10
  const InverseReport rw = symbol_inverse(a, G, 1e-10, 128.0);
  CHECK(rw.right_residual <= 1e-10);
  CHECK(rw.left_residual <= 1e-10);

  // fiberwise inversion at the identity
  const HomogeneousSymbol f = band_symbol(g, d, 1, cplx(0.2, 0.1), 0.3);
  CrossedElement fe = CrossedElement::make(g, d);
  fe.add_term(0.0, f, G);
  const InverseReport rf = symbol_inverse(fe, G);
  CHECK(rf.right_residual <= 1e-10);
  CHECK(rf.left_residual <= 1e-10);
  REQUIRE(rf.b.terms.size() == 1);
  for (int c = 0; c < g.cells(); ++c)
    for (int dd = 0; dd < d.n_dirs; ++dd) {
      const cplx fv = f.at_cell(c, dd);
      const cplx want = -fv / (1.0 + fv);
      CHECK(std::abs(rf.b.terms[0].a.at_cell(c, dd) - want) <= 1e-12);
    }

  // non-invertible elements stall above tolerance
  CrossedElement bad = CrossedElement::make(g, d);
  bad.add_term(1.0, HomogeneousSymbol(g, d, -1.0), G);
  CHECK_THROWS_AS(symbol_inverse(bad, G, 1e-10, 16.0), ConditioningError);

  // vanishing unitized fiber
  CrossedElement sing = CrossedElement::make(g, d);
  sing.add_term(0.0, HomogeneousSymbol(g, d, -1.0), G);
  CHECK_THROWS_AS(symbol_inverse(sing, G), ConditioningError);
}

TEST_CASE("assembled operators: unit, shifts, norm bound") {
  const TorusGrid g = TorusGrid::make(1, 32);
  const DirGrid d = DirGrid::make(1, 2);
  const GroupModel G = make_integer_rotation(kAlpha);
  const Representation rep = shift_representation(G, g);

  CrossedElement e = CrossedElement::make(g, d);
  e.add_term(0.0, HomogeneousSymbol(g, d, 1.0), G);
  const GridOperator De = assemble_G_operator(e, G, rep, g);
  CHECK((De.m - CMatrix::identity(32)).max_abs() <= 1e-12);

  CrossedElement s = CrossedElement::make(g, d);
  s.add_term(1.0, HomogeneousSymbol(g, d, 1.0), G);
  const GridOperator Ds = assemble_G_operator(s, G, rep, g);
  const GridOperator sh = shift_operator(vec1(kAlpha), g);
  CHECK((Ds.m - sh.m).max_abs() <= 1e-12);

  CrossedElement n = CrossedElement::make(g, d, 1.0);
  n.add_term(1.0, HomogeneousSymbol(g, d, cplx(0.0, 0.5)), G);
  const GridOperator Dn = assemble_G_operator(n, G, rep, g);
  CHECK(Dn.m.opnorm() <= 1.5 + 1e-9);

  const TorusGrid other = TorusGrid::make(1, 16);
  CHECK_THROWS_AS(assemble_G_operator(n, G, rep, other), UsageError);

  // shift representation refuses a non-translation action
  const GroupModel bad =
      make_line_flow(make_abs_p_hamiltonian(), 0.2, 2);
  const Representation brep = shift_representation(bad, g);
  CHECK_THROWS_AS(brep.phi(bad.step), UsageError);
}

TEST_CASE("crossed element serialization round-trips exactly") {
  const TorusGrid g = TorusGrid::make(1, 16);
  const DirGrid d = DirGrid::make(1, 2);
  const GroupModel G = make_integer_rotation(kAlpha);
  CrossedElement e = CrossedElement::make(g, d, cplx(0.25, -1.5));
  e.add_term(0.0, band_symbol(g, d, 1, cplx(0.3, 0.7), 1.0), G);
  e.add_term(2.0, band_symbol(g, d, 2, cplx(-0.1, 0.0), cplx(0.0, 0.4)), G);

  const std::string path = "crossed_roundtrip.json";
  write_crossed_element(path, e);
  const CrossedElement r = read_crossed_element(path);
  CHECK(r.unit == e.unit);
  REQUIRE(r.terms.size() == e.terms.size());
  for (std::size_t i = 0; i < e.terms.size(); ++i) {
    CHECK(r.terms[i].g == e.terms[i].g);
    for (std::size_t k = 0; k < e.terms[i].a.samples().size(); ++k)
      CHECK(r.terms[i].a.samples()[k] == e.terms[i].a.samples()[k]);
  }
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_crossed_element("no_such_element.json"), UsageError);
}
