#include "gop/simd/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>

namespace gop::simd {
namespace {

// complex pairs live as [re, im, re, im]; a 256-bit lane holds two of them

inline __m256d swap_halves(__m256d v) { return _mm256_shuffle_pd(v, v, 0x5); }

void caxpy_avx2(std::size_t n, cplx a, const cplx* x, cplx* y) {
  const __m256d var = _mm256_set1_pd(a.real());
  const __m256d vai = _mm256_set1_pd(a.imag());
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  const std::size_t nv = n & ~std::size_t(1);
  for (std::size_t i = 0; i < 2 * nv; i += 4) {
    const __m256d vx = _mm256_loadu_pd(xd + i);
    const __m256d vy = _mm256_loadu_pd(yd + i);
    const __m256d t = _mm256_mul_pd(vai, swap_halves(vx));
    // even lanes a.re*x.re - a.im*x.im, odd lanes a.re*x.im + a.im*x.re
    const __m256d r = _mm256_fmaddsub_pd(var, vx, t);
    _mm256_storeu_pd(yd + i, _mm256_add_pd(vy, r));
  }
  for (std::size_t i = nv; i < n; ++i) y[i] += a * x[i];
}

void cpmul_avx2(std::size_t n, const cplx* x, const cplx* y, cplx* out) {
  const double* xd = reinterpret_cast<const double*>(x);
  const double* yd = reinterpret_cast<const double*>(y);
  double* od = reinterpret_cast<double*>(out);
  const std::size_t nv = n & ~std::size_t(1);
  for (std::size_t i = 0; i < 2 * nv; i += 4) {
    const __m256d vx = _mm256_loadu_pd(xd + i);
    const __m256d vy = _mm256_loadu_pd(yd + i);
    const __m256d vxr = _mm256_shuffle_pd(vx, vx, 0x0);
    const __m256d vxi = _mm256_shuffle_pd(vx, vx, 0xF);
    const __m256d t = _mm256_mul_pd(vxi, swap_halves(vy));
    _mm256_storeu_pd(od + i, _mm256_fmaddsub_pd(vxr, vy, t));
  }
  for (std::size_t i = nv; i < n; ++i) out[i] = x[i] * y[i];
}

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

cplx cdotc_avx2(std::size_t n, const cplx* x, const cplx* y) {
  const double* xd = reinterpret_cast<const double*>(x);
  const double* yd = reinterpret_cast<const double*>(y);
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  const __m256d sgn = _mm256_setr_pd(-1.0, 1.0, -1.0, 1.0);
  const std::size_t nv = n & ~std::size_t(1);
  for (std::size_t i = 0; i < 2 * nv; i += 4) {
    const __m256d vx = _mm256_loadu_pd(xd + i);
    const __m256d vy = _mm256_loadu_pd(yd + i);
    acc_re = _mm256_fmadd_pd(vx, vy, acc_re);  // xr*yr + xi*yi per pair
    const __m256d t = _mm256_mul_pd(swap_halves(vx), sgn);  // [-xi, xr]
    acc_im = _mm256_fmadd_pd(t, vy, acc_im);  // xr*yi - xi*yr per pair
  }
  double re = hsum(acc_re), im = hsum(acc_im);
  for (std::size_t i = nv; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    re += xr * y[i].real() + xi * y[i].imag();
    im += xr * y[i].imag() - xi * y[i].real();
  }
  return {re, im};
}

}  // namespace

const Kernels* avx2_kernels() {
  static const Kernels k{caxpy_avx2, cpmul_avx2, cdotc_avx2, "avx2"};
  return &k;
}

}  // namespace gop::simd

#else

namespace gop::simd {
const Kernels* avx2_kernels() { return nullptr; }
}

#endif
