#include "gop/crossed.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>

#include "gop/errors.hpp"
#include "gop/quantize.hpp"
#include "json.hpp"

namespace gop {

namespace {

// integer lattice key of a snapped parameter (exact on snapped values)
long key_of(const GroupModel& G, double g) {
  if (G.kind == GroupKind::Line) return std::llround(g / G.step);
  return std::llround(g);
}

void check_same_shape(const CrossedElement& a, const CrossedElement& b) {
  if (!(a.grid == b.grid) || !(a.dirs == b.dirs))
    throw UsageError("crossed elements live on different grids");
}

// y + alpha * x, merging coefficients term by term
CrossedElement axpy(const CrossedElement& y, cplx alpha,
                    const CrossedElement& x, const GroupModel& G) {
  check_same_shape(y, x);
  CrossedElement out = y;
  out.unit += alpha * x.unit;
  for (const CrossedTerm& t : x.terms) {
    HomogeneousSymbol s = t.a;
    s *= alpha;
    out.add_term(t.g, s, G);
  }
  return out;
}

void drop_beyond_radius(CrossedElement& e, double radius) {
  e.terms.erase(std::remove_if(e.terms.begin(), e.terms.end(),
                               [radius](const CrossedTerm& t) {
                                 return std::abs(t.g) > radius + 1e-9;
                               }),
                e.terms.end());
}

}  // namespace

CrossedElement CrossedElement::make(TorusGrid grid, DirGrid dirs, cplx unit) {
  if (grid.dim != dirs.dim) throw UsageError("grid/direction dim mismatch");
  CrossedElement e;
  e.grid = grid;
  e.dirs = dirs;
  e.unit = unit;
  return e;
}

void CrossedElement::add_term(double g, const HomogeneousSymbol& a,
                              const GroupModel& G) {
  if (!(a.grid() == grid) || !(a.dirs() == dirs))
    throw UsageError("coefficient grid mismatch");
  const double gs = G.snap(g);
  auto it = std::lower_bound(
      terms.begin(), terms.end(), gs,
      [](const CrossedTerm& t, double v) { return t.g < v; });
  if (it != terms.end() && it->g == gs)
    it->a += a;
  else
    terms.insert(it, CrossedTerm{gs, a});
}

const HomogeneousSymbol* CrossedElement::coeff(double g) const {
  auto it = std::lower_bound(
      terms.begin(), terms.end(), g,
      [](const CrossedTerm& t, double v) { return t.g < v; });
  if (it != terms.end() && it->g == g) return &it->a;
  return nullptr;
}

double CrossedElement::support_radius() const {
  double r = 0.0;
  for (const CrossedTerm& t : terms) r = std::max(r, std::abs(t.g));
  return r;
}

double CrossedElement::coeff_norm() const {
  double r = std::abs(unit);
  for (const CrossedTerm& t : terms) r = std::max(r, t.a.max_abs());
  return r;
}

CrossedElement& CrossedElement::prune(double floor) {
  terms.erase(std::remove_if(terms.begin(), terms.end(),
                             [floor](const CrossedTerm& t) {
                               return t.a.max_abs() <= floor;
                             }),
              terms.end());
  return *this;
}

CrossedElement convolve(const CrossedElement& a, const CrossedElement& b,
                        const GroupModel& G) {
  check_same_shape(a, b);
  CrossedElement out = CrossedElement::make(a.grid, a.dirs, a.unit * b.unit);
  // unit cross terms: the adjoined unit acts as the exact identity
  for (const CrossedTerm& t : b.terms) {
    HomogeneousSymbol s = t.a;
    s *= a.unit;
    out.add_term(t.g, s, G);
  }
  for (const CrossedTerm& t : a.terms) {
    HomogeneousSymbol s = t.a;
    s *= b.unit;
    out.add_term(t.g, s, G);
  }
  for (const CrossedTerm& ta : a.terms) {
    const CanonicalMap h = G.act(ta.g);
    const double wh = G.haar_weight(ta.g);
    for (const CrossedTerm& tb : b.terms) {
      const double g = G.compose(ta.g, tb.g);
      HomogeneousSymbol moved = egorov_transport(tb.a, h);  // b o h^{-1}
      moved *= ta.a;
      if (wh != 1.0) moved *= cplx(wh, 0.0);
      out.add_term(g, moved, G);
    }
  }
  return out.prune(0.0);
}

CrossedElement involution(const CrossedElement& a, const GroupModel& G) {
  CrossedElement out = CrossedElement::make(a.grid, a.dirs, std::conj(a.unit));
  for (const CrossedTerm& t : a.terms) {
    const double g = G.inverse(t.g);
    out.add_term(g, egorov_transport(t.a.conj(), G.act(g)), G);
  }
  return out;
}

CrossedElement restrict_to_transverse(const CrossedElement& a,
                                      const TransverseSet& ts) {
  if (!(ts.grid() == a.grid) || !(ts.dirs() == a.dirs))
    throw UsageError("transverse set grid mismatch");
  CrossedElement out = a;
  for (CrossedTerm& t : out.terms)
    for (int c = 0; c < a.grid.cells(); ++c)
      for (int d = 0; d < a.dirs.n_dirs; ++d)
        if (!ts.at(c, d)) t.a.at_cell(c, d) = 0.0;
  return out;
}

TrajectoryOperator trajectory_symbol(const CrossedElement& a,
                                     const GroupModel& G,
                                     const CospherePoint& base, int window) {
  if (norm(base.omega) == 0.0)
    throw DomainError("trajectory base has zero covector");
  std::vector<double> params;
  double unit_param = 1.0;
  switch (G.kind) {
    case GroupKind::Trivial:
      params = {0.0};
      break;
    case GroupKind::Cyclic:
      for (int k = 0; k < G.modulus; ++k) params.push_back((double)k);
      break;
    case GroupKind::Integers:
      if (window < 1) throw UsageError("window must be >= 1");
      for (int k = -window; k <= window; ++k) params.push_back((double)k);
      break;
    case GroupKind::Line:
      if (window < 1) throw UsageError("window must be >= 1");
      unit_param = G.step;
      for (int k = -window; k <= window; ++k)
        params.push_back(G.snap(k * G.step));
      break;
  }
  long radius_keys = 0;
  for (const CrossedTerm& t : a.terms)
    radius_keys = std::max(radius_keys, std::labs(key_of(G, t.g)));
  if (G.kind == GroupKind::Integers || G.kind == GroupKind::Line) {
    if ((long)window < radius_keys)
      throw UsageError("window smaller than the support radius");
  }

  // orbit cache: compose the unit-step map instead of re-solving per entry
  const std::size_t n = params.size();
  std::vector<PhasePoint> orbit(n);
  if (G.kind == GroupKind::Cyclic) {
    orbit[0] = {base.x, base.omega};
    const CanonicalMap up = G.act(1.0);
    for (std::size_t k = 1; k < n; ++k) orbit[k] = up.forward(orbit[k - 1]);
  } else {
    const std::size_t c0 = n / 2;  // params are symmetric around 0
    orbit[c0] = {base.x, base.omega};
    if (n > 1) {
      const CanonicalMap up = G.act(unit_param);
      const CanonicalMap dn = G.act(-unit_param);
      for (std::size_t k = c0 + 1; k < n; ++k)
        orbit[k] = up.forward(orbit[k - 1]);
      for (std::size_t k = c0; k-- > 0;) orbit[k] = dn.forward(orbit[k + 1]);
    }
  }

  // per-term orbit values, evaluated once per row
  std::map<long, std::vector<cplx>> values;
  for (const CrossedTerm& t : a.terms) {
    std::vector<cplx> v(n);
    for (std::size_t h = 0; h < n; ++h)
      v[h] = t.a.eval(orbit[h].x, orbit[h].p);
    values.emplace(key_of(G, t.g), std::move(v));
  }

  std::vector<double> sqw(n, 1.0);
  if (G.kind == GroupKind::Line)
    for (std::size_t k = 0; k < n; ++k)
      sqw[k] = std::sqrt(G.haar_weight(params[k]));

  TrajectoryOperator out;
  out.base = base;
  out.params = params;
  out.m = CMatrix(n, n);
  for (std::size_t h = 0; h < n; ++h) {
    for (std::size_t k = 0; k < n; ++k) {
      long dk = key_of(G, params[h]) - key_of(G, params[k]);
      if (G.kind == GroupKind::Cyclic) {
        dk %= G.modulus;
        if (dk < 0) dk += G.modulus;
      }
      cplx v = 0.0;
      auto it = values.find(dk);
      if (it != values.end()) v = it->second[h];
      if (G.kind == GroupKind::Line) v *= sqw[h] * sqw[k];
      if (h == k) v += a.unit;
      out.m(h, k) = v;
    }
  }
  return out;
}

SectionReport finite_section_invertibility(
    const CrossedElement& a, const GroupModel& G,
    const std::vector<CospherePoint>& bases, const std::vector<int>& windows,
    double threshold) {
  if (windows.empty() || bases.empty())
    throw UsageError("need at least one base point and window");
  if (!std::is_sorted(windows.begin(), windows.end()))
    throw UsageError("windows must increase");
  SectionReport rep;
  rep.windows = windows;
  rep.threshold = threshold;
  bool degenerate = false;
  bool all_above = true;
  for (const CospherePoint& base : bases) {
    SectionProfile prof;
    prof.base = base;
    for (int w : windows) {
      const TrajectoryOperator T = trajectory_symbol(a, G, base, w);
      prof.sigma_min.push_back(T.m.singular_values().back());
    }
    if (prof.sigma_min.back() <= 0.5 * prof.sigma_min.front())
      degenerate = true;
    for (double s : prof.sigma_min)
      if (s < threshold) all_above = false;
    rep.profiles.push_back(std::move(prof));
  }
  rep.verdict = degenerate ? "degenerate"
                           : (all_above ? "elliptic" : "inconclusive");
  return rep;
}

InverseReport symbol_inverse(const CrossedElement& a, const GroupModel& G,
                             double tol, double max_radius) {
  CrossedElement A = a;
  A.unit += 1.0;
  if (std::abs(A.unit) < 1e-12)
    throw ConditioningError("inversion needs a nonvanishing unit part");

  InverseReport rep;
  // identity-only support: fiberwise scalar inversion is exact
  bool id_only = true;
  for (const CrossedTerm& t : a.terms)
    if (key_of(G, t.g) != 0) id_only = false;
  if (id_only) {
    const cplx u = A.unit;
    CrossedElement b = CrossedElement::make(a.grid, a.dirs, 1.0 / u - 1.0);
    if (!a.terms.empty()) {
      const HomogeneousSymbol& f = a.terms.front().a;
      HomogeneousSymbol h(a.grid, a.dirs);
      for (int c = 0; c < a.grid.cells(); ++c)
        for (int d = 0; d < a.dirs.n_dirs; ++d) {
          const cplx denom = u + f.at_cell(c, d);
          if (std::abs(denom) < 1e-12)
            throw ConditioningError("unitized symbol vanishes on a fiber");
          h.at_cell(c, d) = -f.at_cell(c, d) / (u * denom);
        }
      b.add_term(0.0, h, G);
    }
    rep.b = b;
    CrossedElement X = b;
    X.unit += 1.0;
    CrossedElement R = convolve(A, X, G);
    R.unit -= 1.0;
    rep.right_residual = R.coeff_norm();
    CrossedElement L = convolve(X, A, G);
    L.unit -= 1.0;
    rep.left_residual = L.coeff_norm();
    return rep;
  }

  const double unit_rad =
      (G.kind == GroupKind::Line) ? G.step : 1.0;
  const double cap = max_radius < 0.0
                         ? 4.0 * std::max(a.support_radius(), unit_rad)
                         : max_radius * unit_rad;
  CrossedElement X = CrossedElement::make(a.grid, a.dirs, 1.0 / A.unit);
  double best = -1.0;
  for (int it = 1; it <= 60; ++it) {
    CrossedElement R = convolve(A, X, G);
    R.unit -= 1.0;
    CrossedElement L = convolve(X, A, G);
    L.unit -= 1.0;
    rep.right_residual = R.coeff_norm();
    rep.left_residual = L.coeff_norm();
    rep.iterations = it;
    const double res = std::max(rep.right_residual, rep.left_residual);
    if (res <= tol) break;
    if (best >= 0.0 && res >= 0.9 * best) break;  // truncation floor reached
    best = (best < 0.0) ? res : std::min(best, res);
    CrossedElement XR = convolve(X, R, G);
    X = axpy(X, -1.0, XR, G);
    drop_beyond_radius(X, cap);
    X.prune(1e-16);
  }
  const double res = std::max(rep.right_residual, rep.left_residual);
  if (res > tol)
    throw ConditioningError(
        "symbol inverse stalled above tolerance at the support cap");
  rep.b = X;
  rep.b.unit -= 1.0;
  return rep;
}

Representation shift_representation(const GroupModel& G,
                                    const TorusGrid& grid) {
  if (G.dim != grid.dim) throw UsageError("group/grid dim mismatch");
  Representation rep;
  rep.descriptor = "shift";
  const GroupModel Gc = G;
  const TorusGrid gr = grid;
  rep.phi = [Gc, gr](double g) {
    const CanonicalMap m = Gc.act(g);
    const PhasePoint a = m.forward({Vec{0.3, 0.8}, Vec{1.0, 0.4}});
    const PhasePoint b = m.forward({Vec{2.1, 4.4}, Vec{-0.7, 0.8}});
    Vec c = vec2(a.x[0] - 0.3, a.x[1] - 0.8);
    for (int i = 0; i < Gc.dim; ++i) {
      const double d2 = (i == 0) ? b.x[0] - 2.1 : b.x[1] - 4.4;
      if (std::abs(wrap_pm_pi(d2 - c[i])) > 1e-9 ||
          std::abs(b.p[i] - ((i == 0) ? -0.7 : 0.8)) > 1e-9)
        throw UsageError("shift representation needs a translation action");
    }
    if (Gc.dim == 1) c[1] = 0.0;
    return shift_operator(c, gr);
  };
  return rep;
}

GridOperator assemble_G_operator(const CrossedElement& elt,
                                 const GroupModel& G,
                                 const Representation& rep,
                                 const TorusGrid& grid) {
  if (!(grid == elt.grid)) throw UsageError("element/grid mismatch");
  const std::size_t cells = (std::size_t)grid.cells();
  CMatrix M = CMatrix::identity(cells);
  M *= elt.unit;
  for (const CrossedTerm& t : elt.terms) {
    const GridOperator phi = rep.phi(t.g);
    if (!(phi.grid == grid))
      throw UsageError("representation grid mismatch");
    CMatrix prod = quantize_symbol(t.a, grid).m * phi.m;
    const double w = G.haar_weight(t.g);
    if (w != 1.0) prod *= cplx(w, 0.0);
    M += prod;
  }
  return {grid, std::move(M), "assembled"};
}

void write_crossed_element(const std::string& path, const CrossedElement& e) {
  nlohmann::json j;
  j["format"] = "crossed-element-v1";
  j["dim"] = e.grid.dim;
  j["n_points"] = e.grid.n_points;
  j["n_dirs"] = e.dirs.n_dirs;
  j["unit"] = {e.unit.real(), e.unit.imag()};
  nlohmann::json terms = nlohmann::json::array();
  for (const CrossedTerm& t : e.terms) {
    nlohmann::json jt;
    jt["g"] = t.g;
    std::vector<double> re, im;
    re.reserve(t.a.samples().size());
    im.reserve(t.a.samples().size());
    for (const cplx& v : t.a.samples()) {
      re.push_back(v.real());
      im.push_back(v.imag());
    }
    jt["re"] = std::move(re);
    jt["im"] = std::move(im);
    terms.push_back(std::move(jt));
  }
  j["terms"] = std::move(terms);
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary);
    if (!f) throw UsageError("cannot open " + tmp + " for writing");
    f << j.dump(1) << '\n';
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw UsageError("cannot move " + tmp + " into place");
}

CrossedElement read_crossed_element(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open " + path);
  nlohmann::json j;
  try {
    f >> j;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("malformed crossed element file: " +
                     std::string(e.what()));
  }
  try {
    if (j.at("format") != "crossed-element-v1")
      throw UsageError("unknown crossed element format");
    const TorusGrid grid =
        TorusGrid::make(j.at("dim").get<int>(), j.at("n_points").get<int>());
    const DirGrid dirs =
        DirGrid::make(grid.dim, j.at("n_dirs").get<int>());
    CrossedElement e = CrossedElement::make(
        grid, dirs,
        cplx(j.at("unit").at(0).get<double>(),
             j.at("unit").at(1).get<double>()));
    const std::size_t sz = (std::size_t)grid.cells() * dirs.n_dirs;
    for (const nlohmann::json& jt : j.at("terms")) {
      const auto& re = jt.at("re");
      const auto& im = jt.at("im");
      if (re.size() != sz || im.size() != sz)
        throw UsageError("coefficient sample count mismatch");
      HomogeneousSymbol s(grid, dirs);
      for (std::size_t i = 0; i < sz; ++i)
        s.samples()[i] = cplx(re.at(i).get<double>(), im.at(i).get<double>());
      e.terms.push_back(CrossedTerm{jt.at("g").get<double>(), std::move(s)});
    }
    std::sort(e.terms.begin(), e.terms.end(),
              [](const CrossedTerm& x, const CrossedTerm& y) {
                return x.g < y.g;
              });
    return e;
  } catch (const nlohmann::json::exception& ex) {
    throw UsageError("malformed crossed element file: " +
                     std::string(ex.what()));
  }
}

}  // namespace gop
