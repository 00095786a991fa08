#include "gop/wavefront.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <unordered_set>

#include "gop/errors.hpp"
#include "gop/fft.hpp"

namespace gop {

int nearest_dir(const DirGrid& dirs, const Vec& w) {
  if (norm(w) < 1e-12) throw DomainError("direction of a zero covector");
  if (dirs.dim == 1) return w[0] > 0 ? 0 : 1;
  const double th = std::atan2(w[1], w[0]);
  const double step = kTwoPi / dirs.n_dirs;
  int k = (int)std::lround(th / step) % dirs.n_dirs;
  if (k < 0) k += dirs.n_dirs;
  return k;
}

WavefrontSet WavefrontSet::make(TorusGrid grid, DirGrid dirs) {
  if (grid.dim != dirs.dim) throw UsageError("grid/direction dim mismatch");
  WavefrontSet s;
  s.grid = grid;
  s.dirs = dirs;
  return s;
}

long WavefrontSet::pack(int i, int d, int j, int d2) const {
  const long cells = grid.cells();
  const long nd = dirs.n_dirs;
  return (((long)i * nd + d) * cells + j) * nd + d2;
}

void WavefrontSet::unpack(long key, int& i, int& d, int& j, int& d2) const {
  const long cells = grid.cells();
  const long nd = dirs.n_dirs;
  d2 = (int)(key % nd);
  key /= nd;
  j = (int)(key % cells);
  key /= cells;
  d = (int)(key % nd);
  i = (int)(key / nd);
}

void WavefrontSet::mark(int i, int d, int j, int d2, double m) {
  double& slot = mass[pack(i, d, j, d2)];
  slot = std::max(slot, m);
}

bool WavefrontSet::at(int i, int d, int j, int d2) const {
  return mass.count(pack(i, d, j, d2)) != 0;
}

double WavefrontSet::total_mass() const {
  double t = 0.0;
  for (const auto& [k, m] : mass) t += m;
  return t;
}

CMatrix kernel_of(const GridOperator& op) {
  const double h = op.grid.spacing();
  const double scale = op.grid.dim == 1 ? 1.0 / h : 1.0 / (h * h);
  CMatrix k = op.m;
  k *= cplx(scale, 0.0);
  return k;
}

namespace {

// circulant Gaussian frequency taper; mollifies without moving singularities
CMatrix taper_matrix(int n, double gamma) {
  std::vector<cplx> t((std::size_t)n);
  for (int k = 0; k < n; ++k) {
    const double f = fft::freq_of_index(k, n);
    const double r = f / (gamma * n);
    t[(std::size_t)k] = std::exp(-r * r);
  }
  fft::backward(t.data(), n);
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int d = (i - j) % n;
      if (d < 0) d += n;
      m(i, j) = t[(std::size_t)d] / (double)n;
    }
  return m;
}

}  // namespace

WavefrontSet wavefront_estimate(const GridOperator& op,
                                const WavefrontOptions& opts) {
  if (op.grid.dim != 1)
    throw UsageError("kernel wavefront estimation expects dim 1");
  const int n = op.grid.n_points;
  const int P = opts.patch;
  if (P < 8 || P % 2 != 0 || P > n)
    throw UsageError("patch must be even, >= 8, and fit the grid");
  if (opts.window < 4.0) throw UsageError("window must span >= 4 cells");
  if (opts.energy_threshold <= 0.0 || opts.energy_threshold >= 1.0)
    throw UsageError("energy threshold must lie in (0, 1)");

  const CMatrix T = taper_matrix(n, opts.taper);
  const CMatrix K = T * op.m * T;

  const double sigma = opts.window / 4.0;
  std::vector<double> w((std::size_t)P);
  for (int u = 0; u < P; ++u) {
    const double uc = u - P / 2;
    w[(std::size_t)u] = std::exp(-uc * uc / (2 * sigma * sigma));
  }

  const std::size_t nn = (std::size_t)n * n;
  std::vector<double> tot(nn, 0.0);
  std::vector<double> hb(nn, 0.0);
  std::vector<double> quad(nn * 4, 0.0);
  std::vector<cplx> patch((std::size_t)P * P);
  double tot_max = 0.0;

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int u = 0; u < P; ++u) {
        const int ic = op.grid.wrap(i + u - P / 2);
        for (int v = 0; v < P; ++v) {
          const int jc = op.grid.wrap(j + v - P / 2);
          patch[(std::size_t)u * P + v] =
              K((std::size_t)ic, (std::size_t)jc) *
              (w[(std::size_t)u] * w[(std::size_t)v]);
        }
      }
      fft::forward(patch.data(), P, P);
      const std::size_t cell = (std::size_t)i * n + j;
      for (int m0 = 0; m0 < P; ++m0) {
        const int fa = fft::freq_of_index(m0, P);
        for (int m1 = 0; m1 < P; ++m1) {
          const int fb = fft::freq_of_index(m1, P);
          const double e = std::norm(patch[(std::size_t)m0 * P + m1]);
          tot[cell] += e;
          if (fa == 0 || fb == 0) continue;
          if (std::max(std::abs(fa), std::abs(fb)) < P / 4) continue;
          const int s = fa > 0 ? 0 : 1;
          const int t = fb > 0 ? 0 : 1;
          quad[cell * 4 + s * 2 + t] += e;
          hb[cell] += e;
        }
      }
      tot_max = std::max(tot_max, tot[cell]);
    }
  }

  WavefrontSet out = WavefrontSet::make(op.grid, DirGrid::make(1, 2));
  if (tot_max <= 0.0) return out;
  auto q = [&](int i, int j, int s, int t) {
    return quad[((std::size_t)op.grid.wrap(i) * n + op.grid.wrap(j)) * 4 +
                s * 2 + t];
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const std::size_t cell = (std::size_t)i * n + j;
      // singular content must be non-negligible against the kernel's scale
      if (hb[cell] < opts.cell_floor * tot_max) continue;
      for (int s = 0; s < 2; ++s)
        for (int t = 0; t < 2; ++t) {
          const double e = quad[cell * 4 + s * 2 + t];
          if (e < opts.energy_threshold * hb[cell]) continue;
          // non-maximum suppression along both kernel axes
          if (e < q(i - 1, j, s, t) || e < q(i + 1, j, s, t) ||
              e < q(i, j - 1, s, t) || e < q(i, j + 1, s, t))
            continue;
          // kernel pair (x, sgn fa; x', sgn fb) maps to the twisted relation
          // (x, sgn fa; x', -sgn fb)
          out.mark(i, s, j, 1 - t, e / tot_max);
        }
    }
  return out;
}

namespace {

// dilate a coefficient support mask by one x-cell (Chebyshev, periodic)
std::vector<std::uint8_t> dilated_support(const HomogeneousSymbol& a,
                                          const TorusGrid& g,
                                          const DirGrid& dirs) {
  const int cells = g.cells();
  const int nd = dirs.n_dirs;
  std::vector<std::uint8_t> raw((std::size_t)cells * nd, 0);
  for (int c = 0; c < cells; ++c)
    for (int d = 0; d < nd; ++d)
      raw[(std::size_t)c * nd + d] = std::abs(a.at_cell(c, d)) > 1e-12;
  std::vector<std::uint8_t> out((std::size_t)cells * nd, 0);
  const int n = g.n_points;
  for (int c = 0; c < cells; ++c) {
    const int i0 = g.dim == 1 ? c : c / n;
    const int i1 = g.dim == 1 ? 0 : c % n;
    for (int d = 0; d < nd; ++d) {
      bool hit = false;
      for (int a0 = -1; a0 <= 1 && !hit; ++a0)
        for (int a1 = (g.dim == 1 ? 0 : -1); a1 <= (g.dim == 1 ? 0 : 1); ++a1) {
          const int cc = g.dim == 1 ? g.wrap(i0 + a0) : g.flat(i0 + a0, i1 + a1);
          if (raw[(std::size_t)cc * nd + d]) {
            hit = true;
            break;
          }
        }
      out[(std::size_t)c * nd + d] = hit;
    }
  }
  return out;
}

}  // namespace

WavefrontSet predicted_wavefront(const CrossedElement& elt,
                                 const GroupModel& G,
                                 const TransverseSet* ts) {
  if (ts && (!(ts->grid() == elt.grid) || !(ts->dirs() == elt.dirs)))
    throw UsageError("transverse set grid mismatch");
  WavefrontSet out = WavefrontSet::make(elt.grid, elt.dirs);
  const int cells = elt.grid.cells();
  const int nd = elt.dirs.n_dirs;
  for (const CrossedTerm& t : elt.terms) {
    const std::vector<std::uint8_t> supp =
        dilated_support(t.a, elt.grid, elt.dirs);
    const CanonicalMap gi = G.act(G.inverse(t.g));
    for (int c = 0; c < cells; ++c)
      for (int d = 0; d < nd; ++d) {
        if (!supp[(std::size_t)c * nd + d]) continue;
        if (ts && !ts->at(c, d)) continue;
        const PhasePoint m{elt.grid.point(c), elt.dirs.dir(d)};
        const PhasePoint pm = gi.forward(m);
        const int j = elt.grid.cell_of(pm.x);
        const int d2 = nearest_dir(elt.dirs, pm.p);
        if (ts && !ts->at(j, d2)) continue;
        out.mark(c, d, j, d2, 1.0);
      }
  }
  if (std::abs(elt.unit) > 1e-12)
    for (int c = 0; c < cells; ++c)
      for (int d = 0; d < nd; ++d) out.mark(c, d, c, d, 1.0);
  return out;
}

namespace {

std::vector<int> cell_neighborhood(const TorusGrid& g, int c, int slack) {
  std::vector<int> out;
  if (g.dim == 1) {
    for (int a = -slack; a <= slack; ++a) out.push_back(g.wrap(c + a));
  } else {
    const int n = g.n_points;
    const int i0 = c / n, i1 = c % n;
    for (int a0 = -slack; a0 <= slack; ++a0)
      for (int a1 = -slack; a1 <= slack; ++a1)
        out.push_back(g.flat(i0 + a0, i1 + a1));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<int> dir_neighborhood(const DirGrid& d, int k, int slack) {
  std::vector<int> out;
  for (int a = -slack; a <= slack; ++a) {
    int r = (k + a) % d.n_dirs;
    if (r < 0) r += d.n_dirs;
    out.push_back(r);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

ContainmentReport containment_report(const WavefrontSet& estimated,
                                     const WavefrontSet& predicted,
                                     int slack_x, int slack_dir,
                                     double budget) {
  if (!(estimated.grid == predicted.grid) ||
      !(estimated.dirs == predicted.dirs))
    throw UsageError("wavefront sets live on different grids");
  std::unordered_set<long> dilated;
  for (const auto& [key, m] : predicted.mass) {
    int i, d, j, d2;
    predicted.unpack(key, i, d, j, d2);
    for (int ii : cell_neighborhood(predicted.grid, i, slack_x))
      for (int dd : dir_neighborhood(predicted.dirs, d, slack_dir))
        for (int jj : cell_neighborhood(predicted.grid, j, slack_x))
          for (int dd2 : dir_neighborhood(predicted.dirs, d2, slack_dir))
            dilated.insert(predicted.pack(ii, dd, jj, dd2));
  }
  ContainmentReport rep;
  rep.marked = estimated.count();
  for (const auto& [key, m] : estimated.mass) {
    rep.total_mass += m;
    if (!dilated.count(key)) rep.outside_mass += m;
  }
  rep.outside_fraction =
      rep.total_mass > 0 ? rep.outside_mass / rep.total_mass : 0.0;
  rep.pass = rep.outside_fraction <= budget;
  return rep;
}

SmoothingReport smoothing_check(const GridOperator& op,
                                const std::vector<double>& bands) {
  if (bands.size() < 2) throw UsageError("need at least two bands");
  if (!std::is_sorted(bands.begin(), bands.end()))
    throw UsageError("bands must increase");
  SmoothingReport rep;
  rep.bands = bands;
  for (double k : bands) rep.norms.push_back(band_norm(op, k));
  rep.decreasing = true;
  for (std::size_t i = 0; i + 1 < rep.norms.size(); ++i)
    if (rep.norms[i + 1] > rep.norms[i] * (1.0 - 1e-9)) rep.decreasing = false;
  // least squares on log-log, clipping dead bands
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = (double)bands.size();
  for (std::size_t i = 0; i < bands.size(); ++i) {
    const double x = std::log(bands[i]);
    const double y = std::log(std::max(rep.norms[i], 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  rep.exponent = -(m * sxy - sx * sy) / (m * sxx - sx * sx);
  rep.smoothing_consistent = rep.decreasing && rep.exponent >= 1.0;
  return rep;
}

WavefrontSet stationary_phase_support(const PhaseFamily& fam,
                                      const TorusGrid& grid,
                                      const DirGrid& dirs,
                                      const StationaryOptions& opts) {
  if (!fam.psi) throw UsageError("phase family needs a phase");
  if (fam.dim != grid.dim) throw UsageError("phase/grid dim mismatch");
  const double tol_theta =
      opts.tol_theta > 0 ? opts.tol_theta : 0.6 * grid.spacing();

  // prechecks: degree-one homogeneity in theta, nonvanishing differential
  {
    const auto samples = phase_samples(fam.dim, 10, 23);
    const double tm = fam.n_t > 0 ? 0.5 * (fam.t_min + fam.t_max) : 0.0;
    for (std::size_t s = 0; s + 1 < samples.size(); s += 2) {
      const Vec x = samples[s].x;
      const Vec xp = samples[s + 1].x;
      Vec th = samples[s].p;
      if (norm(th) < 0.1) th = vec1(1.0);
      const double p1 = fam.psi(x, xp, tm, th);
      const double p2 = fam.psi(x, xp, tm, scale(2.0, th));
      if (std::abs(p2 - 2.0 * p1) > 1e-6 * (1.0 + std::abs(p1)))
        throw UsageError("phase is not homogeneous of degree one");
      const double e = opts.fd_step;
      double grad = 0.0;
      for (int i = 0; i < fam.dim; ++i) {
        Vec xa = x, xb = x;
        xa[i] += e;
        xb[i] -= e;
        grad += std::abs(fam.psi(xa, xp, tm, th) - fam.psi(xb, xp, tm, th));
        Vec ya = xp, yb = xp;
        ya[i] += e;
        yb[i] -= e;
        grad += std::abs(fam.psi(x, ya, tm, th) - fam.psi(x, yb, tm, th));
      }
      if (grad / (2 * e) + std::abs(p1) < 1e-6)
        throw UsageError("phase differential vanishes at a sample");
    }
  }

  std::vector<double> ts;
  if (fam.n_t <= 0)
    ts.push_back(0.0);
  else if (fam.n_t == 1)
    ts.push_back(fam.t_min);
  else
    for (int k = 0; k < fam.n_t; ++k)
      ts.push_back(fam.t_min +
                   (fam.t_max - fam.t_min) * k / (double)(fam.n_t - 1));

  std::vector<Vec> thetas;
  if (fam.dim == 1) {
    thetas.push_back(vec1(1.0));
    thetas.push_back(vec1(-1.0));
  } else {
    const int nt = std::max(fam.n_theta, 4);
    for (int k = 0; k < nt; ++k) {
      const double a = kTwoPi * k / nt;
      thetas.push_back(vec2(std::cos(a), std::sin(a)));
    }
  }

  WavefrontSet out = WavefrontSet::make(grid, dirs);
  const int cells = grid.cells();
  const double e = opts.fd_step;
  for (int ci = 0; ci < cells; ++ci) {
    const Vec x = grid.point(ci);
    for (int cj = 0; cj < cells; ++cj) {
      const Vec xp = grid.point(cj);
      for (const Vec& th : thetas) {
        for (double t : ts) {
          // theta-stationarity first: it prunes nearly everything
          double g0, g1 = 0.0;
          {
            Vec ta = th, tb = th;
            ta[0] += e;
            tb[0] -= e;
            g0 = (fam.psi(x, xp, t, ta) - fam.psi(x, xp, t, tb)) / (2 * e);
            if (fam.dim == 2) {
              ta = th;
              tb = th;
              ta[1] += e;
              tb[1] -= e;
              g1 = (fam.psi(x, xp, t, ta) - fam.psi(x, xp, t, tb)) / (2 * e);
            }
          }
          if (std::hypot(g0, g1) > tol_theta) continue;
          if (fam.n_t > 0) {
            const double gt =
                (fam.psi(x, xp, t + e, th) - fam.psi(x, xp, t - e, th)) /
                (2 * e);
            if (std::abs(gt) > opts.tol_t) continue;
          }
          if (fam.amplitude &&
              std::abs(fam.amplitude(x, xp, t, th)) <= opts.amp_floor)
            continue;
          Vec xi = vec1(0.0), xip = vec1(0.0);
          for (int i = 0; i < fam.dim; ++i) {
            Vec xa = x, xb = x;
            xa[i] += e;
            xb[i] -= e;
            xi[i] = (fam.psi(xa, xp, t, th) - fam.psi(xb, xp, t, th)) / (2 * e);
            Vec ya = xp, yb = xp;
            ya[i] += e;
            yb[i] -= e;
            xip[i] =
                -(fam.psi(x, ya, t, th) - fam.psi(x, yb, t, th)) / (2 * e);
          }
          if (norm(xi) < 1e-8 || norm(xip) < 1e-8) continue;
          out.mark(ci, nearest_dir(dirs, xi), cj, nearest_dir(dirs, xip), 1.0);
        }
      }
    }
  }
  return out;
}

namespace {

void commit_file(const std::string& tmp, const std::string& path) {
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw UsageError("cannot move " + tmp + " into place");
}

std::string num17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_mask_csv(const std::string& path, const TransverseSet& ts) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary);
    if (!f) throw UsageError("cannot open " + tmp + " for writing");
    const TorusGrid& g = ts.grid();
    const int nd = ts.dirs().n_dirs;
    f << "# grid," << g.dim << "," << g.n_points << ",dirs," << nd << "\n";
    f << (g.dim == 1 ? "x0,dir,flag" : "x0,x1,dir,flag") << "\n";
    for (int c = 0; c < g.cells(); ++c) {
      for (int d = 0; d < nd; ++d) {
        if (g.dim == 1)
          f << c;
        else
          f << c / g.n_points << "," << c % g.n_points;
        f << "," << d << "," << (ts.at(c, d) ? 1 : 0) << "\n";
      }
    }
  }
  commit_file(tmp, path);
}

void write_mask_bits(const std::string& path, const TransverseSet& ts) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary);
    if (!f) throw UsageError("cannot open " + tmp + " for writing");
    const auto& mask = ts.mask();
    char head[20];
    std::memcpy(head, "GOPMSK01", 8);
    const std::uint32_t meta[3] = {(std::uint32_t)ts.grid().dim,
                                   (std::uint32_t)ts.grid().n_points,
                                   (std::uint32_t)ts.dirs().n_dirs};
    std::memcpy(head + 8, meta, 12);
    f.write(head, sizeof head);
    std::vector<std::uint8_t> packed((mask.size() + 7) / 8, 0);
    for (std::size_t i = 0; i < mask.size(); ++i)
      if (mask[i]) packed[i / 8] |= (std::uint8_t)(1u << (i % 8));
    f.write(reinterpret_cast<const char*>(packed.data()),
            (std::streamsize)packed.size());
  }
  commit_file(tmp, path);
}

void write_wavefront_csv(const std::string& path, const WavefrontSet& ws) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary);
    if (!f) throw UsageError("cannot open " + tmp + " for writing");
    f << "# grid," << ws.grid.dim << "," << ws.grid.n_points << ",dirs,"
      << ws.dirs.n_dirs << "\n";
    f << "i,d,j,d2,mass\n";
    for (const auto& [key, m] : ws.mass) {
      int i, d, j, d2;
      ws.unpack(key, i, d, j, d2);
      f << i << "," << d << "," << j << "," << d2 << "," << num17(m) << "\n";
    }
  }
  commit_file(tmp, path);
}

}  // namespace gop
