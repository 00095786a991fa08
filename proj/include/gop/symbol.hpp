#pragma once
#include <functional>
#include <vector>

#include "gop/torus.hpp"

namespace gop {

// Degree-zero positively homogeneous symbol a(x, p) = a(x, p/|p|), stored as
// samples on the cosphere grid (x-cell major, direction minor).  Off-grid
// x-evaluation is trigonometric (exact for band-limited samples, so symbol
// transport along exact maps introduces no resampling error); the angle
// coordinate (dim 2) interpolates linearly between direction cells.
class HomogeneousSymbol {
 public:
  HomogeneousSymbol() = default;
  HomogeneousSymbol(TorusGrid grid, DirGrid dirs, cplx fill = 0.0);

  static HomogeneousSymbol from_function(
      TorusGrid grid, DirGrid dirs,
      const std::function<cplx(const Vec& x, const Vec& omega)>& f);

  const TorusGrid& grid() const { return grid_; }
  const DirGrid& dirs() const { return dirs_; }

  cplx at_cell(int x_cell, int d_cell) const {
    return samples_[(std::size_t)x_cell * dirs_.n_dirs + d_cell];
  }
  cplx& at_cell(int x_cell, int d_cell) {
    spec_ok_ = false;
    return samples_[(std::size_t)x_cell * dirs_.n_dirs + d_cell];
  }
  const std::vector<cplx>& samples() const { return samples_; }
  std::vector<cplx>& samples() {
    spec_ok_ = false;
    return samples_;
  }

  // homogeneous evaluation, p != 0
  cplx eval(const Vec& x, const Vec& p) const;

  double max_abs() const;

  HomogeneousSymbol& operator+=(const HomogeneousSymbol& o);
  HomogeneousSymbol& operator*=(const HomogeneousSymbol& o);  // pointwise
  HomogeneousSymbol& operator*=(cplx s);
  HomogeneousSymbol conj() const;

  friend HomogeneousSymbol operator+(HomogeneousSymbol a, const HomogeneousSymbol& b) {
    a += b;
    return a;
  }
  friend HomogeneousSymbol operator*(HomogeneousSymbol a, const HomogeneousSymbol& b) {
    a *= b;
    return a;
  }
  friend HomogeneousSymbol operator*(cplx s, HomogeneousSymbol a) {
    a *= s;
    return a;
  }

 private:
  void check_compatible(const HomogeneousSymbol& o) const;
  cplx eval_dir(const Vec& x, int d) const;
  const cplx* spectrum(int d) const;  // Fourier coefficients of one direction
  TorusGrid grid_;
  DirGrid dirs_;
  std::vector<cplx> samples_;
  mutable std::vector<cplx> spec_;  // dir-major, rebuilt lazily
  mutable bool spec_ok_ = false;
};

}  // namespace gop
