#pragma once

#include <boost/rational.hpp>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace semifree {

using Rational = boost::rational<std::int64_t>;

std::string to_string(const Rational& r);
Rational parse_rational(std::string_view text);

/// Constructors of the tagged-tree encoding shared by every carrier in the
/// library: plain labels, the maybe cells, non-empty words, finite subsets,
/// finitely supported distributions and the two coproduct injections.
enum class Kind : std::uint8_t { Base, Nothing, Just, Word, SubSet, Dist, L, R };

/// Immutable, structurally compared tree value.
///
/// SubSet and Dist are canonicalised on construction (sorted, deduplicated,
/// weights merged and validated), so `==` is the only equality any diagram
/// check needs. Copies share the underlying node.
class Element {
public:
  Element();  // Nothing

  static Element base(std::string label);
  static Element nothing();
  static Element just(Element inner);
  static Element word(std::vector<Element> letters);
  static Element subset(std::vector<Element> members);
  static Element dist(std::vector<std::pair<Element, Rational>> weighted);
  static Element left(Element inner);
  static Element right(Element inner);

  Kind kind() const noexcept;
  bool is(Kind k) const noexcept { return kind() == k; }

  const std::string& label() const;
  /// Single child of Just / L / R.
  const Element& inner() const;
  /// Children of Word / SubSet / Dist (support, in canonical order).
  std::span<const Element> children() const;
  /// Weights of a Dist, aligned with children().
  std::span<const Rational> weights() const;

  std::size_t hash() const noexcept;
  std::string to_string() const;

  friend bool operator==(const Element& a, const Element& b) noexcept;
  friend std::strong_ordering operator<=>(const Element& a, const Element& b) noexcept;

  struct Node;  // opaque

private:
  explicit Element(std::shared_ptr<const Node> node);
  static Element unary(Kind k, Element inner);
  std::shared_ptr<const Node> node_;
};

/// Inverse of Element::to_string. Throws ParseError.
Element parse_element(std::string_view text);

struct ElementHash {
  std::size_t operator()(const Element& e) const noexcept { return e.hash(); }
};

using ElementMap = std::function<Element(const Element&)>;

}  // namespace semifree
