#pragma once
#include "gop/canonical.hpp"
#include "gop/hamiltonian.hpp"

namespace gop {

struct FlowOptions {
  double step = 0.005;    // RK4 step size
  double t_max = 0.25;    // admissible |t| (graph regime for the built-ins)
  double p_floor = 1e-8;  // |p| underflow -> SingularityError
};

// classical RK4 for (x', p') = (H_p, -H_x); fixed step count ceil(|t|/step)
PhasePoint integrate_flow(const Hamiltonian& H, double t, const PhasePoint& m0,
                          const FlowOptions& opts = {});

// time-t flow as a homogeneous canonical map (inverse = time -t flow)
CanonicalMap flow_map(const Hamiltonian& H, double t,
                      const FlowOptions& opts = {});

}  // namespace gop
