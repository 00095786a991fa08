#include "gop/quantize.hpp"

#include <cmath>
#include <map>
#include <numeric>

#include "gop/fft.hpp"

namespace gop {

namespace {

// row j of the position-side matrix from its frequency coefficients:
//   A[j, k] = (1/cells) * sum_m c[m] e^{-i xi_m x_k}  =  forward FFT of c
void row_from_coeffs(CMatrix& m, std::size_t j, std::vector<cplx>& c,
                     const TorusGrid& grid) {
  const int n = grid.n_points;
  fft::forward(c.data(), grid.dim == 2 ? n : grid.cells(),
               grid.dim == 2 ? n : 0);
  const double inv = 1.0 / (double)grid.cells();
  for (std::size_t k = 0; k < c.size(); ++k) m(j, k) = inv * c[k];
}

cplx dir_mean(const HomogeneousSymbol& a, int x_cell) {
  cplx s = 0.0;
  for (int d = 0; d < a.dirs().n_dirs; ++d) s += a.at_cell(x_cell, d);
  return s / (double)a.dirs().n_dirs;
}

}  // namespace

GridOperator quantize_symbol(const HomogeneousSymbol& a, const TorusGrid& grid) {
  if (!(a.grid() == grid)) throw UsageError("symbol sampled on another grid");
  const std::size_t cells = (std::size_t)grid.cells();
  CMatrix m(cells, cells);
  std::vector<cplx> c(cells);
  for (std::size_t j = 0; j < cells; ++j) {
    const Vec xj = grid.point((int)j);
    for (std::size_t s = 0; s < cells; ++s) {
      if (s == 0) {
        c[0] = dir_mean(a, (int)j);
        continue;
      }
      const Vec xi = fft::freq_vec((int)s, grid);
      c[s] = a.eval(xj, xi) * std::polar(1.0, dot(xi, xj));
    }
    row_from_coeffs(m, j, c, grid);
  }
  return {grid, std::move(m), "op(" + std::to_string(grid.dim) + "d symbol)"};
}

GridOperator shift_operator(const Vec& c, const TorusGrid& grid) {
  const std::size_t cells = (std::size_t)grid.cells();
  CMatrix m(cells, cells);
  std::vector<cplx> coeff(cells);
  for (std::size_t j = 0; j < cells; ++j) {
    const Vec xj = grid.point((int)j);
    for (std::size_t s = 0; s < cells; ++s) {
      const Vec xi = fft::freq_vec((int)s, grid);
      coeff[s] = std::polar(1.0, dot(xi, sub(xj, c)));
    }
    row_from_coeffs(m, j, coeff, grid);
  }
  return {grid, std::move(m), "shift"};
}

GridOperator weighted_shift_operator(
    const Vec& c, const std::function<double(const Vec&)>& volume,
    const TorusGrid& grid) {
  GridOperator sh = shift_operator(c, grid);
  for (std::size_t j = 0; j < (std::size_t)grid.cells(); ++j) {
    const Vec xj = grid.point((int)j);
    const double va = volume(sub(xj, c));
    const double vb = volume(xj);
    if (!(va > 0.0) || !(vb > 0.0))
      throw DomainError("volume density must be positive");
    const cplx r = std::sqrt(va / vb);
    for (std::size_t k = 0; k < sh.m.cols(); ++k) sh.m(j, k) *= r;
  }
  sh.descriptor = "weighted-shift";
  return sh;
}

GridOperator quantize_canonical(
    const GeneratingFunction& S,
    const std::function<cplx(const Vec&, const Vec&)>& amp,
    const TorusGrid& grid) {
  const std::size_t cells = (std::size_t)grid.cells();
  CMatrix m(cells, cells);
  std::vector<cplx> c(cells);
  for (std::size_t j = 0; j < cells; ++j) {
    const Vec xj = grid.point((int)j);
    // the characteristic root depends only on the ray of p': solve once per
    // primitive lattice direction of this row and reuse along the ray
    std::map<std::pair<long, long>, Vec> roots;
    for (std::size_t s = 1; s < cells; ++s) {
      const Vec xi = fft::freq_vec((int)s, grid);
      const Vec w = scale(1.0 / norm(xi), xi);
      const long a0 = (long)std::llround(xi[0]);
      const long a1 = (long)std::llround(xi[1]);
      const long d = std::gcd(std::labs(a0), std::labs(a1));
      const std::pair<long, long> key{a0 / d, a1 / d};
      auto it = roots.find(key);
      if (it == roots.end())
        it = roots.emplace(key, S.characteristic_root(xj, w)).first;
      const double phase = dot(xi, it->second);  // |xi| * (w . z)
      c[s] = std::polar(1.0, phase) * amp(xj, w);
    }
    // zero mode: direction-mean amplitude (signs in dim 1, axis shell in 2)
    if (grid.dim == 1) {
      c[0] = 0.5 * (amp(xj, vec1(1.0)) + amp(xj, vec1(-1.0)));
    } else {
      c[0] = 0.25 * (amp(xj, vec2(1, 0)) + amp(xj, vec2(0, 1)) +
                     amp(xj, vec2(-1, 0)) + amp(xj, vec2(0, -1)));
    }
    row_from_coeffs(m, j, c, grid);
  }
  return {grid, std::move(m), "fio(t=" + std::to_string(S.time()) + ")"};
}

GridOperator unitarize(const GridOperator& phi) {
  const CSvd f = phi.m.svd();
  if (f.s.empty() || f.s[0] <= 0.0)
    throw ConditioningError("unitarize on zero operator");
  if (f.s.back() < 1e-8 * f.s[0])
    throw ConditioningError("operator nearly rank-deficient in unitarize");
  // (Phi Phi^*)^{-1/2} Phi = U V^h
  return {phi.grid, f.u * f.vh, "unitarized " + phi.descriptor};
}

HomogeneousSymbol egorov_transport(const HomogeneousSymbol& a,
                                   const CanonicalMap& g) {
  if (g.dim != a.grid().dim) throw UsageError("map dim mismatch");
  HomogeneousSymbol out(a.grid(), a.dirs());
  for (int c = 0; c < a.grid().cells(); ++c)
    for (int d = 0; d < a.dirs().n_dirs; ++d) {
      const PhasePoint pre =
          g.inverse({a.grid().point(c), a.dirs().dir(d)});
      out.at_cell(c, d) = a.eval(pre.x, pre.p);
    }
  return out;
}

double egorov_residual(const GridOperator& phi, const HomogeneousSymbol& a,
                       const CanonicalMap& g, double kmin, double kmax) {
  const std::vector<double> sv = phi.m.singular_values();
  if (sv.back() < 1e-8 * sv.front())
    throw ConditioningError("phi too ill-conditioned for conjugation");
  const GridOperator opa = quantize_symbol(a, phi.grid);
  const GridOperator opt = quantize_symbol(egorov_transport(a, g), phi.grid);
  const CMatrix conj = (phi.m * opa.m) * phi.m.inverse();
  GridOperator diff{phi.grid, conj - opt.m, "egorov defect"};
  return band_norm(diff, kmin, kmax);
}

double bump(double t, double T) {
  const double u = t / T;
  if (std::abs(u) >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - u * u));
}

}  // namespace gop
