#pragma once
#include <stdexcept>

namespace gop {

// misuse of an interface: bad sizes, mismatched grids, empty inputs
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// evaluation outside the mathematical domain (zero covector, nonpositive density)
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// characteristic inversion failed: flow left the graph regime
struct CausticError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// matrix too close to singular for the requested operation
struct ConditioningError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// trajectory hit the zero section (|p| underflow)
struct SingularityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// convolution support left the quadrature window
struct TruncationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace gop
