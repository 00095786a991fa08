#include "gop/simd/kernels.hpp"

#if defined(__aarch64__)
#include <arm_neon.h>

namespace gop::simd {
namespace {

// one complex per 128-bit vector: [re, im]

void caxpy_neon(std::size_t n, cplx a, const cplx* x, cplx* y) {
  const float64x2_t sgn = {-1.0, 1.0};
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  for (std::size_t i = 0; i < 2 * n; i += 2) {
    const float64x2_t vx = vld1q_f64(xd + i);
    const float64x2_t vxs = vextq_f64(vx, vx, 1);  // [im, re]
    float64x2_t r = vld1q_f64(yd + i);
    r = vfmaq_n_f64(r, vx, a.real());
    r = vfmaq_f64(r, vmulq_n_f64(vxs, a.imag()), sgn);
    vst1q_f64(yd + i, r);
  }
}

void cpmul_neon(std::size_t n, const cplx* x, const cplx* y, cplx* out) {
  const float64x2_t sgn = {-1.0, 1.0};
  const double* xd = reinterpret_cast<const double*>(x);
  const double* yd = reinterpret_cast<const double*>(y);
  double* od = reinterpret_cast<double*>(out);
  for (std::size_t i = 0; i < 2 * n; i += 2) {
    const float64x2_t vx = vld1q_f64(xd + i);
    const float64x2_t vy = vld1q_f64(yd + i);
    const float64x2_t vys = vextq_f64(vy, vy, 1);
    float64x2_t r = vmulq_n_f64(vy, vgetq_lane_f64(vx, 0));
    r = vfmaq_f64(r, vmulq_n_f64(vys, vgetq_lane_f64(vx, 1)), sgn);
    vst1q_f64(od + i, r);
  }
}

cplx cdotc_neon(std::size_t n, const cplx* x, const cplx* y) {
  const double* xd = reinterpret_cast<const double*>(x);
  const double* yd = reinterpret_cast<const double*>(y);
  float64x2_t acc_re = vdupq_n_f64(0.0);
  float64x2_t acc_im = vdupq_n_f64(0.0);
  const float64x2_t sgn = {-1.0, 1.0};
  for (std::size_t i = 0; i < 2 * n; i += 2) {
    const float64x2_t vx = vld1q_f64(xd + i);
    const float64x2_t vy = vld1q_f64(yd + i);
    acc_re = vfmaq_f64(acc_re, vx, vy);
    acc_im = vfmaq_f64(acc_im, vmulq_f64(vextq_f64(vx, vx, 1), sgn), vy);
  }
  return {vaddvq_f64(acc_re), vaddvq_f64(acc_im)};
}

}  // namespace

const Kernels* neon_kernels() {
  static const Kernels k{caxpy_neon, cpmul_neon, cdotc_neon, "neon"};
  return &k;
}

}  // namespace gop::simd

#else

namespace gop::simd {
const Kernels* neon_kernels() { return nullptr; }
}

#endif
