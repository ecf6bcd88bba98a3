#pragma once

#include <stdexcept>
#include <string>

namespace semifree {

// Structural misuse is reported through these exceptions. Mathematical
// failures (a diagram that does not commute) are Reports, never exceptions.

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvariantViolation : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DomainMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct UnknownMonad : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// An input failed a validity check required by an operation's precondition
/// (not a semialgebra, not natural, not weak, ...). Carries the failing
/// report rendered as text.
struct ValidityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Evaluation needs data the finite representation does not have: a table
/// entry outside the enumerated domain, a natural-transformation component
/// beyond the probe family, or an operation parameter off the rational grid.
/// Diagram checks count such instances as skipped.
struct OutOfReach : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace semifree
