#include "gop/simd/kernels.hpp"

#include <cstring>

namespace gop::simd {
namespace {

const Kernels* detect() {
#if defined(__x86_64__) || defined(__i386__)
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
    if (const Kernels* k = avx2_kernels()) return k;
#endif
  if (const Kernels* k = neon_kernels()) return k;
  return &scalar_kernels();
}

const Kernels*& slot() {
  static const Kernels* k = detect();
  return k;
}

}  // namespace

const Kernels& active_kernels() { return *slot(); }

bool select_kernels(const char* name) {
  if (!std::strcmp(name, "auto")) {
    slot() = detect();
    return true;
  }
  if (!std::strcmp(name, "scalar")) {
    slot() = &scalar_kernels();
    return true;
  }
  if (!std::strcmp(name, "avx2")) {
#if defined(__x86_64__) || defined(__i386__)
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
      if (const Kernels* k = avx2_kernels()) {
        slot() = k;
        return true;
      }
#endif
    return false;
  }
  if (!std::strcmp(name, "neon")) {
    if (const Kernels* k = neon_kernels()) {
      slot() = k;
      return true;
    }
    return false;
  }
  return false;
}

}  // namespace gop::simd
