#include "gop/cmatrix.hpp"

#include <algorithm>
#include <cmath>

#define LAPACK_COMPLEX_CPP
#include <complex>
#include <lapacke.h>

#include "gop/simd/kernels.hpp"

namespace gop {

using lapack_cplx = lapack_complex_double;

CMatrix::CMatrix(std::size_t rows, std::size_t cols, cplx fill)
    : rows_(rows), cols_(cols), d_(rows * cols, fill) {}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

static void check_same_shape(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw UsageError("matrix shape mismatch");
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
  check_same_shape(*this, o);
  simd::active_kernels().caxpy(d_.size(), 1.0, o.d_.data(), d_.data());
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
  check_same_shape(*this, o);
  simd::active_kernels().caxpy(d_.size(), -1.0, o.d_.data(), d_.data());
  return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
  for (cplx& v : d_) v *= s;
  return *this;
}

CMatrix CMatrix::operator*(const CMatrix& o) const {
  if (cols_ != o.rows_) throw UsageError("gemm shape mismatch");
  CMatrix c(rows_, o.cols_);
  const auto& k = simd::active_kernels();
  for (std::size_t i = 0; i < rows_; ++i) {
    cplx* ci = c.row(i);
    const cplx* ai = row(i);
    for (std::size_t l = 0; l < cols_; ++l)
      if (ai[l] != 0.0) k.caxpy(o.cols_, ai[l], o.row(l), ci);
  }
  return c;
}

std::vector<cplx> CMatrix::apply(const std::vector<cplx>& v) const {
  if (v.size() != cols_) throw UsageError("matvec shape mismatch");
  // cdotc conjugates its first argument; feed it conj(v) and flip back
  std::vector<cplx> vc(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) vc[j] = std::conj(v[j]);
  std::vector<cplx> out(rows_);
  const auto& k = simd::active_kernels();
  for (std::size_t i = 0; i < rows_; ++i)
    out[i] = k.cdotc(cols_, vc.data(), row(i));
  return out;
}

CMatrix CMatrix::adjoint() const {
  CMatrix a(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) a(j, i) = std::conj((*this)(i, j));
  return a;
}

double CMatrix::frobenius() const {
  double s = 0.0;
  for (const cplx& v : d_) s += std::norm(v);
  return std::sqrt(s);
}

double CMatrix::max_abs() const {
  double m = 0.0;
  for (const cplx& v : d_) m = std::max(m, std::abs(v));
  return m;
}

std::vector<double> CMatrix::singular_values() const {
  if (rows_ == 0 || cols_ == 0) throw UsageError("svd of empty matrix");
  std::vector<cplx> a = d_;
  const std::size_t k = std::min(rows_, cols_);
  std::vector<double> s(k);
  std::vector<double> superb(k);
  lapack_int info = LAPACKE_zgesvd(
      LAPACK_ROW_MAJOR, 'N', 'N', (lapack_int)rows_, (lapack_int)cols_,
      reinterpret_cast<lapack_cplx*>(a.data()), (lapack_int)cols_, s.data(),
      nullptr, 1, nullptr, 1, superb.data());
  if (info != 0) throw ConditioningError("SVD did not converge");
  return s;
}

CSvd CMatrix::svd() const {
  if (rows_ == 0 || cols_ == 0) throw UsageError("svd of empty matrix");
  std::vector<cplx> a = d_;
  const std::size_t k = std::min(rows_, cols_);
  CSvd out;
  out.s.resize(k);
  out.u = CMatrix(rows_, k);
  out.vh = CMatrix(k, cols_);
  lapack_int info = LAPACKE_zgesdd(
      LAPACK_ROW_MAJOR, 'S', (lapack_int)rows_, (lapack_int)cols_,
      reinterpret_cast<lapack_cplx*>(a.data()), (lapack_int)cols_,
      out.s.data(), reinterpret_cast<lapack_cplx*>(out.u.data()),
      (lapack_int)k, reinterpret_cast<lapack_cplx*>(out.vh.data()),
      (lapack_int)cols_);
  if (info != 0) {
    a = d_;
    std::vector<double> superb(k);
    info = LAPACKE_zgesvd(LAPACK_ROW_MAJOR, 'S', 'S', (lapack_int)rows_,
                          (lapack_int)cols_,
                          reinterpret_cast<lapack_cplx*>(a.data()),
                          (lapack_int)cols_, out.s.data(),
                          reinterpret_cast<lapack_cplx*>(out.u.data()),
                          (lapack_int)k,
                          reinterpret_cast<lapack_cplx*>(out.vh.data()),
                          (lapack_int)cols_, superb.data());
    if (info != 0) throw ConditioningError("SVD did not converge");
  }
  return out;
}

double CMatrix::opnorm() const { return singular_values()[0]; }

CMatrix CMatrix::solve(const CMatrix& rhs) const {
  if (rows_ != cols_) throw UsageError("solve needs a square matrix");
  if (rhs.rows_ != rows_) throw UsageError("solve rhs shape mismatch");
  std::vector<cplx> a = d_;
  CMatrix x = rhs;
  std::vector<lapack_int> piv(rows_);
  const lapack_int info = LAPACKE_zgesv(
      LAPACK_ROW_MAJOR, (lapack_int)rows_, (lapack_int)rhs.cols_,
      reinterpret_cast<lapack_cplx*>(a.data()), (lapack_int)cols_, piv.data(),
      reinterpret_cast<lapack_cplx*>(x.data()), (lapack_int)rhs.cols_);
  if (info != 0) throw ConditioningError("linear solve failed (singular)");
  return x;
}

CMatrix CMatrix::inverse() const { return solve(identity(rows_)); }

CMatrix CMatrix::lstsq(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows()) throw UsageError("lstsq shape mismatch");
  if (a.rows() < a.cols()) throw UsageError("lstsq needs rows >= cols");
  std::vector<cplx> aa = a.d_;
  CMatrix work(std::max(a.rows(), a.cols()), b.cols());
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) work(i, j) = b(i, j);
  const lapack_int info = LAPACKE_zgels(
      LAPACK_ROW_MAJOR, 'N', (lapack_int)a.rows(), (lapack_int)a.cols(),
      (lapack_int)b.cols(), reinterpret_cast<lapack_cplx*>(aa.data()),
      (lapack_int)a.cols(), reinterpret_cast<lapack_cplx*>(work.data()),
      (lapack_int)b.cols());
  if (info != 0) throw ConditioningError("least squares failed");
  CMatrix x(a.cols(), b.cols());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) x(i, j) = work(i, j);
  return x;
}

CMatrix CMatrix::select(const std::vector<int>& row_idx,
                        const std::vector<int>& col_idx) const {
  CMatrix out(row_idx.size(), col_idx.size());
  for (std::size_t i = 0; i < row_idx.size(); ++i)
    for (std::size_t j = 0; j < col_idx.size(); ++j)
      out(i, j) = (*this)((std::size_t)row_idx[i], (std::size_t)col_idx[j]);
  return out;
}

CMatrix CMatrix::select_cols(const std::vector<int>& col_idx) const {
  CMatrix out(rows_, col_idx.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < col_idx.size(); ++j)
      out(i, j) = (*this)(i, (std::size_t)col_idx[j]);
  return out;
}

}  // namespace gop
