#pragma once
#include <span>

#include "gop/flow.hpp"

namespace gop {

// Generating function of the graph of the time-t Hamiltonian flow,
//   S(x, p') = p' . z  where z solves  x(z, p', t) = x
// (z found by Newton on the characteristics; degree-1 homogeneous in p', so
// only the direction of p' enters the solve).  S(x, p') = x . p' at t = 0.
class GeneratingFunction {
 public:
  GeneratingFunction() = default;
  GeneratingFunction(Hamiltonian H, double t, FlowOptions opts = {});

  double time() const { return t_; }
  const Hamiltonian& hamiltonian() const { return H_; }
  const FlowOptions& options() const { return opts_; }

  // throws DomainError at p' = 0, CausticError if Newton fails
  double value(const Vec& x, const Vec& pprime) const;
  Vec grad_x(const Vec& x, const Vec& pprime) const;       // central FD
  Vec grad_pprime(const Vec& x, const Vec& pprime) const;  // central FD
  // the Newton root itself: x-component of the inverse characteristic
  Vec characteristic_root(const Vec& x, const Vec& omega_prime) const;

 private:
  Hamiltonian H_;
  double t_ = 0.0;
  FlowOptions opts_;
};

GeneratingFunction generating_function(const Hamiltonian& H, double t,
                                       const FlowOptions& opts = {});

// max over samples of |dS/dt + H(x, dS/dx)|; time derivative by central
// difference with the stated dt (one-sided at t = 0)
double verify_hamilton_jacobi(const GeneratingFunction& S,
                              std::span<const PhasePoint> samples,
                              double dt = 1e-4);

struct GraphEquationsReport {
  double max_p_residual = 0.0;  // |S'_x(x, p') - p| at (x, p) = g(x', p')
  double max_x_residual = 0.0;  // |S'_p'(x, p') - x'| (periodic distance)
};

// checks the graph description p = S'_x, x' = S'_p' against the map g
// (samples are pre-images (x', p'))
GraphEquationsReport verify_graph_equations(const GeneratingFunction& S,
                                            const CanonicalMap& g,
                                            std::span<const PhasePoint> samples);

}  // namespace gop
