#include "gop/symbol.hpp"

#include <algorithm>
#include <cmath>

#include "gop/fft.hpp"

namespace gop {

HomogeneousSymbol::HomogeneousSymbol(TorusGrid grid, DirGrid dirs, cplx fill)
    : grid_(grid), dirs_(dirs) {
  if (grid.dim != dirs.dim) throw UsageError("grid/direction dim mismatch");
  samples_.assign((std::size_t)grid.cells() * dirs.n_dirs, fill);
}

HomogeneousSymbol HomogeneousSymbol::from_function(
    TorusGrid grid, DirGrid dirs,
    const std::function<cplx(const Vec&, const Vec&)>& f) {
  HomogeneousSymbol s(grid, dirs);
  for (int c = 0; c < grid.cells(); ++c) {
    const Vec x = grid.point(c);
    for (int d = 0; d < dirs.n_dirs; ++d) s.at_cell(c, d) = f(x, dirs.dir(d));
  }
  return s;
}

namespace {

// periodic linear interpolation weights for coordinate c on an n-cell axis
struct LinW {
  int i0, i1;
  double w0, w1;
};

LinW lin_weights(double c, int n, double h) {
  const double t = wrap_2pi(c) / h;
  int i0 = (int)std::floor(t);
  double f = t - i0;
  i0 %= n;
  if (i0 < 0) i0 += n;
  return {i0, (i0 + 1) % n, 1.0 - f, f};
}

// nearest grid node of coordinate c, or -1 when c is genuinely off-grid
int node_of(double c, int n, double h) {
  const double t = wrap_2pi(c) / h;
  const double r = std::round(t);
  if (std::abs(t - r) > 1e-9) return -1;
  int j = (int)r % n;
  return j < 0 ? j + n : j;
}

void phase_table(double x, int n, std::vector<cplx>& t) {
  t.resize((std::size_t)n);
  for (int m = 0; m < n; ++m)
    t[(std::size_t)m] = std::polar(1.0, fft::freq_of_index(m, n) * x);
}

}  // namespace

const cplx* HomogeneousSymbol::spectrum(int d) const {
  const std::size_t cells = (std::size_t)grid_.cells();
  if (!spec_ok_) {
    spec_.assign(cells * (std::size_t)dirs_.n_dirs, 0.0);
    std::vector<cplx> buf(cells);
    const double inv = 1.0 / (double)cells;
    for (int k = 0; k < dirs_.n_dirs; ++k) {
      for (std::size_t c = 0; c < cells; ++c)
        buf[c] = samples_[c * dirs_.n_dirs + k];
      if (grid_.dim == 1)
        fft::forward(buf.data(), grid_.n_points);
      else
        fft::forward(buf.data(), grid_.n_points, grid_.n_points);
      for (std::size_t c = 0; c < cells; ++c)
        spec_[(std::size_t)k * cells + c] = buf[c] * inv;
    }
    spec_ok_ = true;
  }
  return spec_.data() + (std::size_t)d * cells;
}

cplx HomogeneousSymbol::eval_dir(const Vec& x, int d) const {
  const int n = grid_.n_points;
  const double h = grid_.spacing();
  thread_local std::vector<cplx> ph0, ph1;
  if (grid_.dim == 1) {
    const int j = node_of(x[0], n, h);
    if (j >= 0) return at_cell(j, d);
    const cplx* c = spectrum(d);
    phase_table(x[0], n, ph0);
    cplx acc = 0.0;
    for (int m = 0; m < n; ++m) acc += c[m] * ph0[(std::size_t)m];
    return acc;
  }
  const int j0 = node_of(x[0], n, h);
  const int j1 = node_of(x[1], n, h);
  if (j0 >= 0 && j1 >= 0) return at_cell(grid_.flat(j0, j1), d);
  const cplx* c = spectrum(d);
  phase_table(x[0], n, ph0);
  phase_table(x[1], n, ph1);
  cplx acc = 0.0;
  for (int m0 = 0; m0 < n; ++m0) {
    cplx row = 0.0;
    const cplx* cr = c + (std::size_t)m0 * n;
    for (int m1 = 0; m1 < n; ++m1) row += cr[m1] * ph1[(std::size_t)m1];
    acc += ph0[(std::size_t)m0] * row;
  }
  return acc;
}

cplx HomogeneousSymbol::eval(const Vec& x, const Vec& p) const {
  if (norm(p) == 0.0) throw DomainError("symbol evaluated at zero covector");
  if (grid_.dim == 1) return eval_dir(x, p[0] > 0 ? 0 : 1);
  const double th = std::atan2(p[1], p[0]);
  const LinW wd = lin_weights(th, dirs_.n_dirs, kTwoPi / dirs_.n_dirs);
  if (wd.w1 == 0.0) return eval_dir(x, wd.i0);
  return wd.w0 * eval_dir(x, wd.i0) + wd.w1 * eval_dir(x, wd.i1);
}

double HomogeneousSymbol::max_abs() const {
  double m = 0.0;
  for (const cplx& v : samples_) m = std::max(m, std::abs(v));
  return m;
}

void HomogeneousSymbol::check_compatible(const HomogeneousSymbol& o) const {
  if (!(grid_ == o.grid_) || !(dirs_ == o.dirs_))
    throw UsageError("symbol grids differ");
}

HomogeneousSymbol& HomogeneousSymbol::operator+=(const HomogeneousSymbol& o) {
  check_compatible(o);
  spec_ok_ = false;
  for (std::size_t i = 0; i < samples_.size(); ++i) samples_[i] += o.samples_[i];
  return *this;
}

HomogeneousSymbol& HomogeneousSymbol::operator*=(const HomogeneousSymbol& o) {
  check_compatible(o);
  spec_ok_ = false;
  for (std::size_t i = 0; i < samples_.size(); ++i) samples_[i] *= o.samples_[i];
  return *this;
}

HomogeneousSymbol& HomogeneousSymbol::operator*=(cplx s) {
  spec_ok_ = false;
  for (cplx& v : samples_) v *= s;
  return *this;
}

HomogeneousSymbol HomogeneousSymbol::conj() const {
  HomogeneousSymbol r = *this;
  r.spec_ok_ = false;
  for (cplx& v : r.samples_) v = std::conj(v);
  return r;
}

}  // namespace gop
