#pragma once
#include <string>
#include <vector>

#include "gop/cmatrix.hpp"
#include "gop/torus.hpp"

namespace gop {

struct GridFunction {
  TorusGrid grid;
  std::vector<cplx> v;

  static GridFunction zero(const TorusGrid& g) {
    return {g, std::vector<cplx>((std::size_t)g.cells(), 0.0)};
  }
  double l2() const;
};

// dense operator on grid functions (position-side matrix)
struct GridOperator {
  TorusGrid grid;
  CMatrix m;
  std::string descriptor;

  GridFunction apply(const GridFunction& f) const;
};

GridOperator make_identity_operator(const TorusGrid& grid);

// flattened indices of frequency slots with kmin <= |xi| <= kmax
std::vector<int> band_indices(const TorusGrid& grid, double kmin, double kmax);

// frequency-side matrix F A F^* (F the unitary discrete Fourier transform)
CMatrix to_frequency(const GridOperator& a);
GridOperator from_frequency(const CMatrix& af, const TorusGrid& grid,
                            const std::string& descriptor);

// Norm of the band compression P A P with P selecting K <= |xi| <= Lambda.
// Lambda < 0 means the default guard Lambda = n_points/4: degree-zero
// symbols are discontinuous at the frequency origin AND alias across the
// Nyquist fringe, so an unguarded tail projector {|xi| >= K} picks up an
// N-dependent defect that never decays in K.
double band_norm(const GridOperator& a, double kmin, double kmax = -1.0);
double band_norm_freq(const CMatrix& af, const TorusGrid& grid, double kmin,
                      double kmax = -1.0);

// GOPMAT01: magic "GOPMAT01", u32 rows, u32 cols, row-major complex128,
// all little-endian
void write_gopmat(const std::string& path, const CMatrix& m);
CMatrix read_gopmat(const std::string& path);

}  // namespace gop
