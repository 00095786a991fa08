#pragma once
#include <complex>
#include <vector>

#include "gop/errors.hpp"

namespace gop {

using cplx = std::complex<double>;

struct CSvd;

// dense row-major complex matrix; products run on the simd kernels,
// factorizations on LAPACK
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols, cplx fill = 0.0);

  static CMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  cplx* data() { return d_.data(); }
  const cplx* data() const { return d_.data(); }
  cplx* row(std::size_t i) { return d_.data() + i * cols_; }
  const cplx* row(std::size_t i) const { return d_.data() + i * cols_; }
  cplx& operator()(std::size_t i, std::size_t j) { return d_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const {
    return d_[i * cols_ + j];
  }

  CMatrix& operator+=(const CMatrix& o);
  CMatrix& operator-=(const CMatrix& o);
  CMatrix& operator*=(cplx s);
  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(cplx s, CMatrix a) { return a *= s; }
  CMatrix operator*(const CMatrix& o) const;  // gemm
  std::vector<cplx> apply(const std::vector<cplx>& v) const;

  CMatrix adjoint() const;
  double frobenius() const;
  double max_abs() const;

  // singular values, descending (LAPACK zgesdd, zgesvd fallback)
  std::vector<double> singular_values() const;
  CSvd svd() const;
  double opnorm() const;     // largest singular value

  CMatrix solve(const CMatrix& rhs) const;          // square, LU (zgesv)
  CMatrix inverse() const;
  static CMatrix lstsq(const CMatrix& a, const CMatrix& b);  // zgels

  // compression onto index subsets
  CMatrix select(const std::vector<int>& row_idx,
                 const std::vector<int>& col_idx) const;
  CMatrix select_cols(const std::vector<int>& col_idx) const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<cplx> d_;
};

struct CSvd {
  CMatrix u;              // rows x k
  std::vector<double> s;  // k = min(rows, cols), descending
  CMatrix vh;             // k x cols
};

}  // namespace gop
