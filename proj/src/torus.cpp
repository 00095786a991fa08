#include "gop/torus.hpp"

namespace gop {

static bool power_of_two(int n) { return n >= 1 && (n & (n - 1)) == 0; }

TorusGrid TorusGrid::make(int dim, int n_points) {
  if (dim != 1 && dim != 2) throw UsageError("grid dim must be 1 or 2");
  if (n_points < 8 || !power_of_two(n_points))
    throw UsageError("n_points must be a power of two >= 8");
  return TorusGrid{dim, n_points};
}

DirGrid DirGrid::make(int dim, int n_dirs) {
  if (dim == 1) {
    if (n_dirs != 2) throw UsageError("dim 1 has exactly two directions");
    return DirGrid{1, 2};
  }
  if (dim != 2) throw UsageError("direction grid dim must be 1 or 2");
  if (n_dirs < 16 || n_dirs % 2 != 0)
    throw UsageError("dim 2 needs an even n_dirs >= 16");
  return DirGrid{2, n_dirs};
}

}  // namespace gop
