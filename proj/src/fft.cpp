#include "gop/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>

namespace gop::fft {

namespace {

// FFTW plans bound to an internal scratch buffer; callers' data is copied
// through it so alignment is always the plan's own.  Plan creation and the
// shared scratch buffer are not thread-safe, so the whole transform holds
// the cache lock; concurrent callers serialize here.
class PlanCache {
 public:
  void run(cplx* data, int n0, int n1, int sign) {
    const std::lock_guard<std::mutex> hold(lock_);
    const std::size_t len = (std::size_t)n0 * (n1 > 0 ? n1 : 1);
    if (len > cap_) {
      if (buf_) fftw_free(buf_);
      buf_ = (fftw_complex*)fftw_malloc(sizeof(fftw_complex) * len);
      cap_ = len;
      for (auto& [k, p] : plans_) fftw_destroy_plan(p);
      plans_.clear();
    }
    const Key key{n0, n1, sign};
    auto it = plans_.find(key);
    if (it == plans_.end()) {
      fftw_plan p =
          n1 > 0 ? fftw_plan_dft_2d(n0, n1, buf_, buf_, sign, FFTW_ESTIMATE)
                 : fftw_plan_dft_1d(n0, buf_, buf_, sign, FFTW_ESTIMATE);
      it = plans_.emplace(key, p).first;
    }
    std::memcpy(buf_, reinterpret_cast<const void*>(data), sizeof(cplx) * len);
    fftw_execute(it->second);
    std::memcpy(reinterpret_cast<void*>(data), buf_, sizeof(cplx) * len);
  }

 private:
  using Key = std::array<int, 3>;
  std::mutex lock_;
  std::map<Key, fftw_plan> plans_;
  fftw_complex* buf_ = nullptr;
  std::size_t cap_ = 0;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

}  // namespace

void forward(cplx* data, int n0, int n1) {
  cache().run(data, n0, n1, FFTW_FORWARD);
}

void backward(cplx* data, int n0, int n1) {
  cache().run(data, n0, n1, FFTW_BACKWARD);
}

double freq_norm(int slot, const TorusGrid& grid) {
  const Vec f = freq_vec(slot, grid);
  return norm(f);
}

Vec freq_vec(int slot, const TorusGrid& grid) {
  const int n = grid.n_points;
  if (grid.dim == 1) return vec1(freq_of_index(slot, n));
  return vec2(freq_of_index(slot / n, n), freq_of_index(slot % n, n));
}

}  // namespace gop::fft
