#include "doctest.h"

#include "semifree/element.hpp"
#include "semifree/errors.hpp"

using namespace semifree;

TEST_CASE("subsets are sorted and deduplicated") {
  auto a = Element::base("a"), b = Element::base("b");
  CHECK(Element::subset({b, a, b}) == Element::subset({a, b}));
  CHECK(Element::subset({b, a}).children().size() == 2);
}

TEST_CASE("distributions merge weights and stay exact") {
  auto a = Element::base("a"), b = Element::base("b");
  auto d = Element::dist({{a, Rational(1, 4)}, {b, Rational(1, 2)}, {a, Rational(1, 4)}});
  CHECK(d == Element::dist({{b, Rational(1, 2)}, {a, Rational(1, 2)}}));
  CHECK(d.children().size() == 2);
  CHECK(Element::dist({{a, Rational(1)}, {b, Rational(0)}}).children().size() == 1);
  CHECK_THROWS_AS(Element::dist({{a, Rational(1, 3)}}), InvariantViolation);
  CHECK_THROWS_AS(Element::dist({{a, Rational(3, 2)}, {b, Rational(-1, 2)}}), InvariantViolation);
}

TEST_CASE("words are non-empty") { CHECK_THROWS_AS(Element::word({}), InvariantViolation); }

TEST_CASE("numeric labels order numerically") {
  CHECK(Element::base("2") < Element::base("10"));
  CHECK(Element::base("10") < Element::base("a"));
}

TEST_CASE("text form round-trips") {
  auto a = Element::base("a");
  std::vector<Element> samples = {
      a,
      Element::nothing(),
      Element::just(Element::just(a)),
      Element::word({a, Element::base("b"), a}),
      Element::subset({}),
      Element::subset({Element::left(a), Element::right(Element::nothing())}),
      Element::dist({{Element::base("0"), Rational(1, 3)}, {Element::base("1"), Rational(2, 3)}}),
      Element::right(Element::word({Element::left(Element::base("x'"))})),
  };
  for (const auto& e : samples) {
    INFO(e.to_string());
    CHECK(parse_element(e.to_string()) == e);
  }
  CHECK(Element::dist({{a, Rational(1)}}).to_string() == "<1:a>");
  CHECK_THROWS_AS(parse_element("Just("), ParseError);
  CHECK_THROWS_AS(parse_element("[]"), InvariantViolation);
}

TEST_CASE("equal elements hash alike") {
  auto x = Element::subset({Element::base("1"), Element::base("0")});
  auto y = parse_element("{0,1}");
  CHECK(x == y);
  CHECK(x.hash() == y.hash());
}
