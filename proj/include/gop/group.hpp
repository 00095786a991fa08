#pragma once
#include <functional>

#include "gop/canonical.hpp"
#include "gop/flow.hpp"
#include "gop/hamiltonian.hpp"

namespace gop {

enum class GroupKind { Trivial, Cyclic, Integers, Line };

// Discretized acting group: Z/n, Z (sections live on finite windows), or R
// (uniform quadrature nodes on [-window, window] with trapezoid Haar
// weights).  Group parameters are carried as doubles; the discrete kinds
// hold integers, the line kind holds exact multiples of `step`.
struct GroupModel {
  GroupKind kind = GroupKind::Trivial;
  int dim = 1;
  int modulus = 0;      // Cyclic: n
  double step = 0.0;    // Line: quadrature spacing
  double window = 0.0;  // Line: parameters live in [-window, window]
  std::function<CanonicalMap(double)> action;

  double identity() const { return 0.0; }
  // Canonical form of a parameter: reduces mod n (Cyclic), rounds to the
  // nearest integer (Integers/Trivial) or quadrature node (Line).  Rejects
  // parameters off the lattice (UsageError) and, for the line, outside the
  // quadrature window (TruncationError).
  double snap(double g) const;
  double compose(double g, double h) const;  // g h (all supported kinds abelian)
  double inverse(double g) const;
  // counting measure for the discrete kinds; trapezoid weight for the line
  double haar_weight(double g) const;
  CanonicalMap act(double g) const { return action(snap(g)); }
};

// k -> rotation x -> x + k alpha on the 1-torus
GroupModel make_integer_rotation(double alpha);
// Z/n acting by the exact rotations x -> x + 2 pi k / n
GroupModel make_cyclic_rotation(int n);
// R acting by the Hamiltonian flow of H, sampled on 2*half_nodes+1
// quadrature nodes covering [-window, window]
GroupModel make_line_flow(const Hamiltonian& H, double window, int half_nodes,
                          FlowOptions opts = {});
GroupModel make_trivial_group(int dim);

}  // namespace gop
