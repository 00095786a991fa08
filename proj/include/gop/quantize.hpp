#pragma once
#include <functional>

#include "gop/generating.hpp"
#include "gop/grid_operator.hpp"
#include "gop/symbol.hpp"

namespace gop {

// Kohn-Nirenberg quantization of a degree-0 homogeneous symbol:
//   (Op(a)u)(x_j) = sum_xi a(x_j, xi/|xi|) u_hat(xi) e^{i xi x_j},
// zero mode passes with the direction-mean of a(x_j, .).  Rows are
// assembled by one FFT per grid point.
GridOperator quantize_symbol(const HomogeneousSymbol& a, const TorusGrid& grid);

// exact Fourier-multiplier translation u(x) -> u(x - c)
GridOperator shift_operator(const Vec& c, const TorusGrid& grid);

// volume-weighted translation sqrt(vol(x-c)/vol(x)) u(x-c); vol must be
// positive on the grid
GridOperator weighted_shift_operator(
    const Vec& c, const std::function<double(const Vec&)>& volume,
    const TorusGrid& grid);

// Oscillatory quantization of the canonical transformation generated by S:
//   (Phi u)(x_j) = sum_{p' != 0} e^{i(S(x_j, p') )} amp(x_j, p'/|p'|) u_hat(p'),
// zero mode passing with the direction-mean amplitude.  The characteristic
// root is solved once per (row, lattice direction) and reused across the
// ray.
GridOperator quantize_canonical(
    const GeneratingFunction& S,
    const std::function<cplx(const Vec& x, const Vec& omega_prime)>& amp,
    const TorusGrid& grid);

// polar unitarization (Phi Phi^*)^{-1/2} Phi; ConditioningError if Phi is
// nearly rank-deficient (sigma_min < 1e-8 * sigma_max)
GridOperator unitarize(const GridOperator& phi);

// symbol transport a -> a o g^{-1} sampled on the cosphere grid
HomogeneousSymbol egorov_transport(const HomogeneousSymbol& a,
                                   const CanonicalMap& g);

// band norm of Phi Op(a) Phi^{-1} - Op(a o g^{-1}) over K <= |xi| <= Lambda
double egorov_residual(const GridOperator& phi, const HomogeneousSymbol& a,
                       const CanonicalMap& g, double kmin, double kmax = -1.0);

// time-dependent amplitude family for averaged (Lie) operators
struct AmplitudeFamily {
  std::function<cplx(double t, const Vec& x, const Vec& omega)> a;
  double support_radius = 0.0;  // a(t,.,.) == 0 for |t| > support_radius
};

// smooth bump supported on (-T, T), equals exp(-1/(1-(t/T)^2)) scaled to 1
// at t = 0
double bump(double t, double T);

}  // namespace gop
