#include "gop/hamiltonian.hpp"

#include <cmath>
#include <sstream>

namespace gop {

static void require_nonzero(const Vec& p) {
  if (norm(p) == 0.0) throw DomainError("Hamiltonian data at zero covector");
}

Hamiltonian make_linear_hamiltonian(const Vec& v, int dim) {
  Hamiltonian H;
  H.dim = dim;
  std::ostringstream os;
  os << "linear:" << v[0];
  if (dim == 2) os << "," << v[1];
  H.name = os.str();
  H.value = [v](const Vec&, const Vec& p) { return dot(v, p); };
  H.grad_x = [](const Vec&, const Vec& p) {
    require_nonzero(p);
    return Vec{0.0, 0.0};
  };
  H.grad_p = [v](const Vec&, const Vec& p) {
    require_nonzero(p);
    return v;
  };
  return H;
}

Hamiltonian make_abs_p_hamiltonian() {
  Hamiltonian H;
  H.dim = 1;
  H.name = "abs-p";
  H.value = [](const Vec&, const Vec& p) { return std::abs(p[0]); };
  H.grad_x = [](const Vec&, const Vec& p) {
    require_nonzero(p);
    return Vec{0.0, 0.0};
  };
  H.grad_p = [](const Vec&, const Vec& p) {
    require_nonzero(p);
    return Vec{p[0] > 0 ? 1.0 : -1.0, 0.0};
  };
  return H;
}

Hamiltonian make_quadratic_example_hamiltonian() {
  Hamiltonian H;
  H.dim = 2;
  H.name = "quadratic-example";
  H.value = [](const Vec& x, const Vec& p) {
    const double s0 = std::sin(x[0]), s1 = std::sin(x[1]);
    return s0 * s0 * p[0] + s1 * s1 * p[1];
  };
  H.grad_x = [](const Vec& x, const Vec& p) {
    require_nonzero(p);
    return Vec{std::sin(2.0 * x[0]) * p[0], std::sin(2.0 * x[1]) * p[1]};
  };
  H.grad_p = [](const Vec& x, const Vec& p) {
    require_nonzero(p);
    const double s0 = std::sin(x[0]), s1 = std::sin(x[1]);
    return Vec{s0 * s0, s1 * s1};
  };
  return H;
}

Hamiltonian hamiltonian_from_name(const std::string& descriptor, int dim) {
  if (descriptor == "abs-p") {
    if (dim != 1) throw UsageError("abs-p is a 1-d Hamiltonian");
    return make_abs_p_hamiltonian();
  }
  if (descriptor == "quadratic-example") {
    if (dim != 2) throw UsageError("quadratic-example is a 2-d Hamiltonian");
    return make_quadratic_example_hamiltonian();
  }
  if (descriptor.rfind("linear:", 0) == 0) {
    std::istringstream is(descriptor.substr(7));
    Vec v{0.0, 0.0};
    char comma = 0;
    if (!(is >> v[0])) throw UsageError("bad linear Hamiltonian: " + descriptor);
    if (dim == 2 && !(is >> comma >> v[1]))
      throw UsageError("bad linear Hamiltonian: " + descriptor);
    return make_linear_hamiltonian(v, dim);
  }
  throw UsageError("unknown Hamiltonian: " + descriptor);
}

std::pair<Vec, Vec> hamiltonian_vector_field(const Hamiltonian& H, const Vec& x,
                                             const Vec& p) {
  require_nonzero(p);
  return {H.grad_p(x, p), scale(-1.0, H.grad_x(x, p))};
}

double radial_pairing(const Hamiltonian& H, const Vec& x, const Vec& p) {
  require_nonzero(p);
  return dot(p, H.grad_p(x, p));
}

}  // namespace gop
