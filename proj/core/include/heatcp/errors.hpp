#ifndef HEATCP_ERRORS_HPP
#define HEATCP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace heatcp {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Eigenvalue search could not isolate the requested number of roots.
struct BracketingFailure : Error {
  using Error::Error;
};

// Finite-element discretization is too coarse or the profile is degenerate.
struct SingularMatrix : Error {
  using Error::Error;
};

struct IndexOutOfRange : Error {
  using Error::Error;
};

// Panel quadrature failed its self-check for the highest requested mode.
struct QuadratureNonConvergence : Error {
  using Error::Error;
};

// A group of blocks has zero observed quadratic variation.
struct DegenerateBlock : Error {
  using Error::Error;
};

// An operation needed the Brownian increments but the set was simulated
// without them.
struct MissingBrownianPath : Error {
  using Error::Error;
};

// Log-log slope fit received a non-positive error summary.
struct NonPositiveError : Error {
  using Error::Error;
};

}  // namespace heatcp

#endif
