#pragma once
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "gop/hamiltonian.hpp"
#include "gop/torus.hpp"

namespace gop {

// Homogeneous canonical transformation of T*M \ 0, with inverse.
// Maps act on (x, p) with x taken mod 2pi; p-homogeneity of degree 1 is a
// contract on the closures, checked by check_homogeneous_canonical.
struct CanonicalMap {
  int dim = 1;
  std::string name;
  std::function<PhasePoint(const PhasePoint&)> forward;
  std::function<PhasePoint(const PhasePoint&)> inverse;

  PhasePoint operator()(const PhasePoint& m) const { return forward(m); }
};

CanonicalMap identity_map(int dim);
// (x, p) -> (x + c, p)
CanonicalMap translation_map(const Vec& c, int dim);
// g2 after g1
CanonicalMap compose_maps(const CanonicalMap& g2, const CanonicalMap& g1);
CanonicalMap inverse_map(const CanonicalMap& g);

// Residuals of the homogeneous-canonical conditions
//   sum_j gp_j d(gx_j)/dp_k = 0,   sum_j gp_j d(gx_j)/dx_k = p_k
// via central differences with step h = fd_scale * (1 + |p|).
struct CanonicalCheck {
  double max_p_residual = 0.0;   // first family
  double max_x_residual = 0.0;   // second family
  double max_homogeneity = 0.0;  // |g(x, 2p) - (gx, 2 gp)| on samples
  int n_samples = 0;
  double max_residual() const {
    return std::max(max_p_residual, max_x_residual);
  }
};

CanonicalCheck check_homogeneous_canonical(const CanonicalMap& g,
                                           std::span<const PhasePoint> samples,
                                           double fd_scale = 1e-5);

// deterministic sample cloud on T*M \ 0 for the checks
std::vector<PhasePoint> phase_samples(int dim, int count, unsigned seed);

}  // namespace gop
