#pragma once

#include "semifree/element.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace semifree {

/// A finite carrier: distinct labels kept in canonical (sorted) order, so two
/// FinSets with the same members compare equal.
class FinSet {
public:
  FinSet() = default;
  /// Throws InvariantViolation on duplicate labels.
  explicit FinSet(std::vector<Element> elements);
  /// Deduplicates instead of rejecting.
  static FinSet of_unique(std::vector<Element> elements);

  const std::vector<Element>& elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  bool empty() const noexcept { return elements_.empty(); }
  bool contains(const Element& e) const;
  std::optional<std::size_t> index_of(const Element& e) const;
  const Element& operator[](std::size_t i) const { return elements_[i]; }

  auto begin() const { return elements_.begin(); }
  auto end() const { return elements_.end(); }

  std::string to_string() const;

  friend bool operator==(const FinSet&, const FinSet&) = default;

private:
  std::vector<Element> elements_;
};

/// The probe carrier {0, ..., n-1}.
FinSet probe_set(std::size_t n);

/// A total function between finite sets, stored as a table aligned with the
/// canonical order of its domain.
class FinFunction {
public:
  /// `images[i]` is the image of `dom[i]`. Throws InvariantViolation if the
  /// table is not total or an image falls outside `cod`.
  FinFunction(FinSet dom, FinSet cod, std::vector<Element> images);
  /// Tabulates `f` on `dom`; validates images against `cod`.
  static FinFunction tabulate(FinSet dom, FinSet cod, const ElementMap& f);

  const FinSet& dom() const noexcept { return dom_; }
  const FinSet& cod() const noexcept { return cod_; }
  const std::vector<Element>& images() const noexcept { return images_; }

  /// Throws DomainMismatch for inputs outside the domain.
  const Element& operator()(const Element& x) const;
  ElementMap as_map() const;

  std::string to_string() const;

  friend bool operator==(const FinFunction&, const FinFunction&) = default;

private:
  FinSet dom_;
  FinSet cod_;
  std::vector<Element> images_;
};

struct CoproductWitness {
  FinSet sum;
  FinFunction inl;
  FinFunction inr;
};

FinFunction identity(const FinSet& x);
/// g after f. Throws DomainMismatch unless cod(f) == dom(g).
FinFunction compose(const FinFunction& g, const FinFunction& f);
/// X+Y with L(-)/R(-) tags; nested sums are not flattened.
CoproductWitness coproduct(const FinSet& x, const FinSet& y);
/// [f, g] : X+Y -> K. Throws DomainMismatch unless cod(f) == cod(g).
FinFunction copair(const FinFunction& f, const FinFunction& g);
/// f+g = [inl . f, inr . g].
FinFunction sum_map(const FinFunction& f, const FinFunction& g);
/// All |Y|^|X| functions X -> Y in a fixed order (odometer over dom order).
std::vector<FinFunction> all_functions(const FinSet& x, const FinSet& y);

// Copairing at the level of element transformers. Monad element sets are
// usually infinite, so the diagram code builds [f, g] this way rather than
// through tables.
ElementMap copair(ElementMap on_left, ElementMap on_right);
ElementMap sum_map(ElementMap on_left, ElementMap on_right);
Element inl(const Element& x);
Element inr(const Element& y);

}  // namespace semifree
