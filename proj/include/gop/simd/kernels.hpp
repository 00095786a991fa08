#pragma once
#include <complex>
#include <cstddef>

// Vector kernels for the dense complex linear algebra underneath operator
// assembly and band projections.  A scalar reference implementation always
// exists; AVX2/FMA and NEON variants are selected at runtime when the CPU
// supports them.  All variants must agree to rounding error; see test_simd.

namespace gop::simd {

using cplx = std::complex<double>;

struct Kernels {
  // y[i] += a * x[i]
  void (*caxpy)(std::size_t n, cplx a, const cplx* x, cplx* y);
  // out[i] = x[i] * y[i]
  void (*cpmul)(std::size_t n, const cplx* x, const cplx* y, cplx* out);
  // sum_i conj(x[i]) * y[i]
  cplx (*cdotc)(std::size_t n, const cplx* x, const cplx* y);
  const char* name;
};

const Kernels& scalar_kernels();
const Kernels* avx2_kernels();  // nullptr when not built / not supported
const Kernels* neon_kernels();

// the implementation picked at startup (best supported)
const Kernels& active_kernels();

// force a specific implementation ("scalar", "avx2", "neon", "auto");
// returns false if unavailable.  Used by the equivalence tests.
bool select_kernels(const char* name);

}  // namespace gop::simd
