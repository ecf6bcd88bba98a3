#pragma once

#include "semifree/element.hpp"
#include "semifree/finset.hpp"
#include "semifree/report.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace semifree {

/// Enumeration caps. MX is infinite for nelist and dist, and towers like
/// PPPX explode, so every enumeration of monad elements goes through a Bound.
/// Bounds only restrict inputs: outputs of mult/fmap are never truncated.
struct Bound {
  int max_word_len = 3;     // nelist: words of length 1..max_word_len
  int max_denominator = 2;  // dist: weights k/max_denominator
  int max_subset_size = 0;  // powerset: 0 means every subset

  /// Throws InvariantViolation unless both positive caps are >= 1.
  void validate() const;
  friend bool operator==(const Bound&, const Bound&) = default;
};

/// A monad on finite sets, presented by its action on elements.
///
/// `fmap`, `unit` and `mult` are parametric, so they do not need the carrier.
/// `enumerate` returns MX within the bound in a fixed order; for maybe and
/// powerset (without a subset cap) it is all of MX.
class Monad {
public:
  virtual ~Monad() = default;

  virtual std::string name() const = 0;
  virtual Element unit(const Element& x) const = 0;
  virtual Element mult(const Element& mmx) const = 0;
  virtual Element fmap(const ElementMap& f, const Element& m) const = 0;
  virtual std::vector<Element> enumerate(const FinSet& x, const Bound& b) const = 0;
  /// True when enumerate(X, b) is the whole of MX for every finite X.
  virtual bool finite_under(const Bound& b) const = 0;

  /// MX as a carrier (canonical order).
  FinSet apply(const FinSet& x, const Bound& b) const;
};

using MonadPtr = std::shared_ptr<const Monad>;

/// One of "maybe", "nelist", "powerset", "dist". Throws UnknownMonad.
MonadPtr builtin(const std::string& name);

std::vector<Element> enumerate_elements(const Monad& m, const FinSet& x, const Bound& b);

/// Enumerates M^depth X; the innermost layer uses `inner`, every enclosing
/// layer uses `nested` (defaults to `inner`).
std::vector<Element> enumerate_tower(const Monad& m, const FinSet& x, int depth, const Bound& inner,
                                     const std::optional<Bound>& nested = std::nullopt);

/// A map MX -> X satisfying (or being checked for) associativity.
///
/// Table-backed structures cover a finite, enumerated part of MX; evaluating
/// them elsewhere throws OutOfReach, so checks restrict themselves to the
/// instances that stay inside the table. Callback-backed structures may be
/// total on MX.
class Semialgebra {
public:
  static Semialgebra from_table(FinSet carrier, const std::vector<std::pair<Element, Element>>& table);
  static Semialgebra from_callback(FinSet carrier, ElementMap eval);

  const FinSet& carrier() const noexcept { return carrier_; }
  Element operator()(const Element& m) const;
  ElementMap as_map() const;

  bool table_backed() const noexcept { return table_ != nullptr; }
  /// Entries of a table-backed structure, in canonical order of inputs.
  std::vector<std::pair<Element, Element>> table() const;

private:
  struct Table;
  FinSet carrier_;
  std::shared_ptr<const Table> table_;
  ElementMap eval_;
};

/// a . eta_X as a function on the carrier.
FinFunction unit_restriction(const Monad& m, const Semialgebra& a);

/// Both unit triangles on MX and the associativity square on MMMX.
Report check_monad_laws(const Monad& m, const FinSet& x, const Bound& b,
                        const std::optional<Bound>& nested = std::nullopt);
/// fmap(id) = id and fmap(g.f) = fmap(g).fmap(f) for all f: X->Y, g: Y->Z.
Report check_functor_laws(const Monad& m, const FinSet& x, const FinSet& y, const FinSet& z,
                          const Bound& b);
/// Naturality of unit (on X) and mult (on MMX) against every f: X -> Y.
Report check_unit_mult_naturality(const Monad& m, const FinSet& x, const FinSet& y, const Bound& b);

/// a . Ma = a . mu_X on enumerated MMX (also checks images lie in the carrier).
Report check_semialgebra(const Monad& m, const Semialgebra& a, const Bound& b);
/// check_semialgebra plus a . eta_X = id_X.
Report check_algebra(const Monad& m, const Semialgebra& a, const Bound& b);
/// f . a = b . Mf on enumerated MX. Throws DomainMismatch on carrier mismatch.
Report check_homomorphism(const Monad& m, const Semialgebra& a, const Semialgebra& b,
                          const FinFunction& f, const Bound& bnd);

/// Every table MX -> X (MX enumerated under `b`, must be finite and small).
std::vector<Semialgebra> all_structures(const Monad& m, const FinSet& carrier, const Bound& b);
/// all_structures filtered by check_semialgebra.
std::vector<Semialgebra> enumerate_semialgebras(const Monad& m, const FinSet& carrier, const Bound& b);

/// Structures agree on every enumerated element of M(carrier).
bool same_structure(const Monad& m, const Semialgebra& a, const Semialgebra& b, const Bound& bnd);

/// mu_X viewed as a semialgebra on MX (requires a finite enumeration).
Semialgebra free_semialgebra(const MonadPtr& m, const FinSet& x, const Bound& b);

}  // namespace semifree
