#include "gop/fredholm.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>

namespace gop {

namespace {

constexpr int kSvHead = 4;
constexpr double kGapRequired = 10.0;
constexpr int kRowWiden = 4;

std::vector<double> ascending_sv(const CMatrix& m) {
  std::vector<double> s = m.singular_values();
  std::reverse(s.begin(), s.end());
  return s;
}

int count_small(const std::vector<double>& asc, double tol) {
  int k = 0;
  while (k < (int)asc.size() && asc[(std::size_t)k] <= tol) ++k;
  return k;
}

double gap_of(const std::vector<double>& asc, int k, double tol) {
  if (k >= (int)asc.size()) return 0.0;  // everything under tol: no gap
  const double above = asc[(std::size_t)k];
  if (k == 0) return above / tol;
  return above / std::max(asc[(std::size_t)k - 1], tol * 1e-8);
}

std::vector<double> head_of(const std::vector<double>& asc) {
  return {asc.begin(),
          asc.begin() + std::min<std::size_t>(kSvHead, asc.size())};
}

}  // namespace

IndexReport numerical_index(const std::vector<GridOperator>& ops,
                            double svd_tol) {
  if (ops.size() < 3)
    throw UsageError("numerical index needs at least 3 grid sizes");
  if (!(svd_tol > 0.0)) throw UsageError("svd_tol must be positive");

  IndexReport rep;
  rep.svd_tol = svd_tol;
  int prev = 0;
  for (const GridOperator& op : ops) {
    if (op.grid.dim != ops.front().grid.dim)
      throw UsageError("mixed dimensions in the index size sweep");
    if (op.grid.n_points < 32)
      throw UsageError("guarded compression needs n >= 32");
    if (op.grid.n_points <= prev)
      throw UsageError("grid sizes must be strictly increasing");
    prev = op.grid.n_points;

    const int K = op.grid.n_points / 8;
    const std::vector<int> cols = band_indices(op.grid, 0.0, (double)K);
    const std::vector<int> rows =
        band_indices(op.grid, 0.0, (double)(K + kRowWiden));
    const CMatrix f = to_frequency(op);
    const std::vector<double> sa = ascending_sv(f.select(rows, cols));
    const std::vector<double> sb = ascending_sv(f.adjoint().select(rows, cols));

    const int ker = count_small(sa, svd_tol);
    const int coker = count_small(sb, svd_tol);
    rep.sizes.push_back(op.grid.n_points);
    rep.sv_head.push_back(head_of(sa));
    rep.sv_head_adj.push_back(head_of(sb));
    rep.dim_ker.push_back(ker);
    rep.dim_coker.push_back(coker);
    rep.index.push_back(ker - coker);
    rep.gap_ratio.push_back(
        std::min(gap_of(sa, ker, svd_tol), gap_of(sb, coker, svd_tol)));
  }

  rep.stable = std::all_of(rep.index.begin(), rep.index.end(),
                           [&](int i) { return i == rep.index.front(); });
  rep.conclusive =
      std::all_of(rep.gap_ratio.begin(), rep.gap_ratio.end(),
                  [](double g) { return g >= kGapRequired; });
  rep.verdict =
      !rep.conclusive ? "inconclusive" : (rep.stable ? "stable" : "unstable");
  rep.index_estimate = (rep.stable && rep.conclusive) ? rep.index.front() : 0;
  return rep;
}

void write_index_report(const std::string& path, const IndexReport& rep) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary);
    if (!f) throw UsageError("cannot open " + tmp + " for writing");
    f << "size,dim_ker,dim_coker,index,gap_ratio";
    for (int j = 1; j <= kSvHead; ++j) f << ",sv" << j;
    for (int j = 1; j <= kSvHead; ++j) f << ",adj_sv" << j;
    f << "\n";
    char buf[64];
    auto put = [&](double v) {
      std::snprintf(buf, sizeof(buf), "%.17g", v);
      f << ',' << buf;
    };
    for (std::size_t i = 0; i < rep.sizes.size(); ++i) {
      f << rep.sizes[i] << ',' << rep.dim_ker[i] << ',' << rep.dim_coker[i]
        << ',' << rep.index[i];
      put(rep.gap_ratio[i]);
      for (int j = 0; j < kSvHead; ++j)
        put(j < (int)rep.sv_head[i].size() ? rep.sv_head[i][(std::size_t)j]
                                           : 0.0);
      for (int j = 0; j < kSvHead; ++j)
        put(j < (int)rep.sv_head_adj[i].size()
                ? rep.sv_head_adj[i][(std::size_t)j]
                : 0.0);
      f << "\n";
    }
    f << "# verdict," << rep.verdict << ",index_estimate,"
      << rep.index_estimate << "\n";
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw UsageError("cannot move " + tmp + " into place");
}

AlmostInverseReport almost_inverse(const GridOperator& d,
                                   const CrossedElement& b,
                                   const GroupModel& G,
                                   const Representation& rep, int band) {
  if (band < 1) throw UsageError("band must be >= 1");
  if (16 * band > d.grid.n_points)
    throw UsageError("band too wide: the [2K, 4K] annulus must stay inside "
                     "the guarded range (16*K <= n)");

  CrossedElement inv = b;
  inv.unit += 1.0;
  AlmostInverseReport out;
  out.band = band;
  out.r = assemble_G_operator(inv, G, rep, d.grid);

  const std::size_t cells = (std::size_t)d.grid.cells();
  GridOperator rd{d.grid, out.r.m * d.m - CMatrix::identity(cells),
                  "almost-inverse residual R D - I"};
  GridOperator dr{d.grid, d.m * out.r.m - CMatrix::identity(cells),
                  "almost-inverse residual D R - I"};

  const double K = band;
  out.left_at_band = band_norm(rd, K, 2.0 * K);
  out.left_at_double = band_norm(rd, 2.0 * K, 4.0 * K);
  out.right_at_band = band_norm(dr, K, 2.0 * K);
  out.right_at_double = band_norm(dr, 2.0 * K, 4.0 * K);
  out.left_decreasing =
      out.left_at_double <= out.left_at_band * (1.0 + 1e-9) + 1e-12;
  out.right_decreasing =
      out.right_at_double <= out.right_at_band * (1.0 + 1e-9) + 1e-12;
  out.calculus_failure = !(out.left_decreasing && out.right_decreasing);
  return out;
}

EllipticityReport ellipticity_experiment(const ElementBuilder& build,
                                         const GroupModel& G,
                                         const EllipticityOptions& opts) {
  if (!build) throw UsageError("element builder required");
  if (opts.sizes.size() < 3)
    throw UsageError("ellipticity experiment needs at least 3 grid sizes");
  if (opts.n_bases < 1) throw UsageError("need at least one base point");

  EllipticityReport out;
  out.sizes = opts.sizes;
  std::vector<GridOperator> ops;
  ops.reserve(opts.sizes.size());
  for (int n : opts.sizes) {
    const TorusGrid grid = TorusGrid::make(1, n);
    const DirGrid dirs = DirGrid::make(1, 2);
    const CrossedElement e = build(grid, dirs);
    const Representation rep = shift_representation(G, grid);
    GridOperator d = assemble_G_operator(e, G, rep, grid);
    out.sigma_min.push_back(d.m.singular_values().back());
    ops.push_back(std::move(d));
  }

  const TorusGrid top_grid = TorusGrid::make(1, opts.sizes.back());
  const DirGrid top_dirs = DirGrid::make(1, 2);
  const CrossedElement top = build(top_grid, top_dirs);

  std::vector<CospherePoint> bases;
  bases.reserve((std::size_t)opts.n_bases);
  for (int j = 0; j < opts.n_bases; ++j)
    bases.push_back({vec1(kTwoPi * j / opts.n_bases),
                     vec1(j % 2 == 0 ? 1.0 : -1.0)});
  out.sections = finite_section_invertibility(top, G, bases, opts.windows,
                                              opts.section_threshold);

  CrossedElement a = top;
  a.unit -= 1.0;
  try {
    const InverseReport inv =
        symbol_inverse(a, G, opts.inverse_tol, opts.inverse_max_radius);
    out.inverse_ok = true;
    out.inverse_left = inv.left_residual;
    out.inverse_right = inv.right_residual;
    const Representation rep = shift_representation(G, top_grid);
    out.almost = almost_inverse(ops.back(), inv.b, G, rep, opts.almost_band);
    out.almost_ran = true;
  } catch (const ConditioningError& e) {
    out.inverse_note = e.what();
  } catch (const TruncationError& e) {
    out.inverse_note = e.what();
  }

  out.index = numerical_index(ops, opts.svd_tol);
  out.fredholm_consistent = out.sections.verdict == "elliptic" &&
                            out.inverse_ok && out.almost_ran &&
                            !out.almost.calculus_failure && out.index.stable &&
                            out.index.conclusive;
  return out;
}

}  // namespace gop
