#pragma once

#include <stdexcept>
#include <string>

namespace gdl {

/// Argument outside the domain of a constitutive function (e.g. d not in [0,1]).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Driving variable outside the validity range of an equilibrium branch.
class PhaseError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Parameter combination outside the regime covered by the closed forms.
class UnsupportedRegime : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Degenerate material, e.g. a degradation function with zero initial slope.
class DegenerateMaterial : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative procedure (quadrature, root finding, staggered loop) did not converge.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computed field violates a property it must satisfy by construction.
class InconsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Linear system without a unique solution.
class SingularSystemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gdl
