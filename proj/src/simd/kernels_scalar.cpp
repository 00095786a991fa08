#include "gop/simd/kernels.hpp"

namespace gop::simd {
namespace {

void caxpy_scalar(std::size_t n, cplx a, const cplx* x, cplx* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void cpmul_scalar(std::size_t n, const cplx* x, const cplx* y, cplx* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] * y[i];
}

cplx cdotc_scalar(std::size_t n, const cplx* x, const cplx* y) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    re += xr * yr + xi * yi;
    im += xr * yi - xi * yr;
  }
  return {re, im};
}

}  // namespace

const Kernels& scalar_kernels() {
  static const Kernels k{caxpy_scalar, cpmul_scalar, cdotc_scalar, "scalar"};
  return k;
}

}  // namespace gop::simd
