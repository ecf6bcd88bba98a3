#pragma once

#include "semifree/element.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace semifree {

struct Counterexample {
  std::string context;  // e.g. which function or semialgebra the square was instantiated at
  std::string input;
  std::string lhs;
  std::string rhs;
};

/// Outcome of a diagram check. `skipped` counts instances whose evaluation
/// needed data beyond the finite representation (see OutOfReach).
struct Report {
  std::string law;
  bool pass = true;
  std::optional<Counterexample> counterexample;
  std::size_t checked = 0;
  std::size_t skipped = 0;
  std::string note;
  std::vector<Report> parts;

  /// Passes iff every part passes; inherits the first failing part's witness.
  static Report all_of(std::string law, std::vector<Report> parts);

  void fail(Counterexample cx);
  /// One line per report, indented by nesting depth.
  std::string render(int indent = 0) const;
};

using PathFn = std::function<Element(const Element&)>;

/// Evaluates both paths of a square on every input in order and reports the
/// first input where they differ. Inputs for which either path throws
/// OutOfReach are counted as skipped; an InvariantViolation (ill-shaped
/// intermediate value) is a failure at that input.
Report check_paths(std::string law, std::span<const Element> inputs, const PathFn& lhs,
                   const PathFn& rhs, const std::string& context = {});

/// Folds `part` into `acc` (counts add up, first failure wins).
void absorb(Report& acc, const Report& part);

}  // namespace semifree
