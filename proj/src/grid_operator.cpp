#include "gop/grid_operator.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <memory>

#include "gop/fft.hpp"

namespace gop {

double GridFunction::l2() const {
  double s = 0.0;
  for (const cplx& c : v) s += std::norm(c);
  return std::sqrt(s);
}

GridFunction GridOperator::apply(const GridFunction& f) const {
  if (!(f.grid == grid)) throw UsageError("grid mismatch in apply");
  return {grid, m.apply(f.v)};
}

GridOperator make_identity_operator(const TorusGrid& grid) {
  return {grid, CMatrix::identity((std::size_t)grid.cells()), "identity"};
}

std::vector<int> band_indices(const TorusGrid& grid, double kmin, double kmax) {
  std::vector<int> idx;
  for (int s = 0; s < grid.cells(); ++s) {
    const double r = fft::freq_norm(s, grid);
    if (r >= kmin && r <= kmax) idx.push_back(s);
  }
  return idx;
}

CMatrix to_frequency(const GridOperator& a) {
  const int n = a.grid.n_points;
  const int n1 = a.grid.dim == 2 ? n : 0;
  const std::size_t cells = (std::size_t)a.grid.cells();
  if (a.m.rows() != cells || a.m.cols() != cells)
    throw UsageError("operator matrix does not match its grid");
  CMatrix work = a.m;
  // columns: forward transform over the row index
  {
    std::vector<cplx> col(cells);
    for (std::size_t j = 0; j < cells; ++j) {
      for (std::size_t i = 0; i < cells; ++i) col[i] = work(i, j);
      fft::forward(col.data(), n1 > 0 ? n : (int)cells, n1);
      for (std::size_t i = 0; i < cells; ++i) work(i, j) = col[i];
    }
  }
  // rows: backward transform over the column index
  for (std::size_t i = 0; i < cells; ++i)
    fft::backward(work.row(i), n1 > 0 ? n : (int)cells, n1);
  work *= cplx(1.0 / (double)cells, 0.0);
  return work;
}

GridOperator from_frequency(const CMatrix& af, const TorusGrid& grid,
                            const std::string& descriptor) {
  const int n = grid.n_points;
  const int n1 = grid.dim == 2 ? n : 0;
  const std::size_t cells = (std::size_t)grid.cells();
  if (af.rows() != cells || af.cols() != cells)
    throw UsageError("frequency matrix does not match the grid");
  CMatrix work = af;
  {
    std::vector<cplx> col(cells);
    for (std::size_t j = 0; j < cells; ++j) {
      for (std::size_t i = 0; i < cells; ++i) col[i] = work(i, j);
      fft::backward(col.data(), n1 > 0 ? n : (int)cells, n1);
      for (std::size_t i = 0; i < cells; ++i) work(i, j) = col[i];
    }
  }
  for (std::size_t i = 0; i < cells; ++i)
    fft::forward(work.row(i), n1 > 0 ? n : (int)cells, n1);
  work *= cplx(1.0 / (double)cells, 0.0);
  return {grid, std::move(work), descriptor};
}

double band_norm_freq(const CMatrix& af, const TorusGrid& grid, double kmin,
                      double kmax) {
  if (kmax < 0) kmax = grid.n_points / 4.0;
  if (kmin > kmax) throw UsageError("empty band");
  const std::vector<int> idx = band_indices(grid, kmin, kmax);
  if (idx.empty()) return 0.0;
  return af.select(idx, idx).opnorm();
}

double band_norm(const GridOperator& a, double kmin, double kmax) {
  return band_norm_freq(to_frequency(a), a.grid, kmin, kmax);
}

namespace {

constexpr char kMagic[8] = {'G', 'O', 'P', 'M', 'A', 'T', '0', '1'};

void put_u32(std::FILE* f, std::uint32_t v) {
  unsigned char b[4] = {(unsigned char)(v & 0xff),
                        (unsigned char)((v >> 8) & 0xff),
                        (unsigned char)((v >> 16) & 0xff),
                        (unsigned char)((v >> 24) & 0xff)};
  if (std::fwrite(b, 1, 4, f) != 4) throw UsageError("short write");
}

std::uint32_t get_u32(std::FILE* f) {
  unsigned char b[4];
  if (std::fread(b, 1, 4, f) != 4) throw UsageError("short read");
  return (std::uint32_t)b[0] | ((std::uint32_t)b[1] << 8) |
         ((std::uint32_t)b[2] << 16) | ((std::uint32_t)b[3] << 24);
}

static_assert(std::endian::native == std::endian::little,
              "matrix files are little-endian; big-endian hosts unsupported");

}  // namespace

void write_gopmat(const std::string& path, const CMatrix& m) {
  std::unique_ptr<std::FILE, int (*)(std::FILE*)> f(
      std::fopen(path.c_str(), "wb"), &std::fclose);
  if (!f) throw UsageError("cannot open for writing: " + path);
  if (std::fwrite(kMagic, 1, 8, f.get()) != 8) throw UsageError("short write");
  put_u32(f.get(), (std::uint32_t)m.rows());
  put_u32(f.get(), (std::uint32_t)m.cols());
  const std::size_t n = m.rows() * m.cols();
  if (n && std::fwrite(m.data(), sizeof(cplx), n, f.get()) != n)
    throw UsageError("short write");
}

CMatrix read_gopmat(const std::string& path) {
  std::unique_ptr<std::FILE, int (*)(std::FILE*)> f(
      std::fopen(path.c_str(), "rb"), &std::fclose);
  if (!f) throw UsageError("cannot open: " + path);
  char magic[8];
  if (std::fread(magic, 1, 8, f.get()) != 8 ||
      std::memcmp(magic, kMagic, 8) != 0)
    throw UsageError("not a GOPMAT01 file: " + path);
  const std::uint32_t rows = get_u32(f.get());
  const std::uint32_t cols = get_u32(f.get());
  CMatrix m(rows, cols);
  const std::size_t n = (std::size_t)rows * cols;
  if (n && std::fread(m.data(), sizeof(cplx), n, f.get()) != n)
    throw UsageError("truncated GOPMAT01 file: " + path);
  return m;
}

}  // namespace gop
