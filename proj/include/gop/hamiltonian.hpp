#pragma once
#include <functional>
#include <string>
#include <vector>

#include "gop/torus.hpp"

namespace gop {

// Hamiltonian on T*M \ 0, positively homogeneous of degree 1 in p.
// Built-ins carry analytic gradients; gradients must not be evaluated at p=0.
struct Hamiltonian {
  int dim = 1;
  std::string name;
  std::function<double(const Vec& x, const Vec& p)> value;
  std::function<Vec(const Vec& x, const Vec& p)> grad_x;
  std::function<Vec(const Vec& x, const Vec& p)> grad_p;

  double operator()(const Vec& x, const Vec& p) const { return value(x, p); }
};

// "linear:v1[,v2]" — H = v.p (translation flow)
Hamiltonian make_linear_hamiltonian(const Vec& v, int dim);
// "abs-p" — H = |p| on T^1 (unit-speed sign-split transport)
Hamiltonian make_abs_p_hamiltonian();
// "quadratic-example" — periodic realization sin^2(x1) p1 + sin^2(x2) p2 of
// the singular model x1^2 p1 + x2^2 p2 on T^2: same quadratic vanishing at
// the origin, smooth on the torus, stratified (non-band) zero set.
Hamiltonian make_quadratic_example_hamiltonian();

Hamiltonian hamiltonian_from_name(const std::string& descriptor, int dim);

// (H_p, -H_x); throws DomainError at p = 0
std::pair<Vec, Vec> hamiltonian_vector_field(const Hamiltonian& H, const Vec& x,
                                             const Vec& p);

// p . H_p(x, p); equals H for degree-1 homogeneous Hamiltonians (Euler)
double radial_pairing(const Hamiltonian& H, const Vec& x, const Vec& p);

}  // namespace gop
