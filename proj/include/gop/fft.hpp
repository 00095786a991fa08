#pragma once
#include <complex>
#include <vector>

#include "gop/torus.hpp"

namespace gop::fft {

// Unnormalized DFTs matching the usual convention
//   forward:  X(k) = sum_j x(j) e^{-2 pi i j k / n}  per axis,
// i.e. forward evaluates sum_j x(j) e^{-i xi_k x_j} on the torus grid.
// In-place on row-major data; n1 = 0 means one-dimensional.  Plans are
// cached per shape (single-threaded).
void forward(cplx* data, int n0, int n1 = 0);
void backward(cplx* data, int n0, int n1 = 0);

// signed frequency of FFT slot m on an n-point axis: 0..n/2-1, then -n/2..-1
inline int freq_of_index(int m, int n) { return m <= n / 2 - 1 ? m : m - n; }
inline int index_of_freq(int f, int n) { return f >= 0 ? f : f + n; }

// Euclidean |xi| of a flattened frequency slot on the grid
double freq_norm(int slot, const TorusGrid& grid);
// lattice frequency vector of a flattened slot
Vec freq_vec(int slot, const TorusGrid& grid);

}  // namespace gop::fft
