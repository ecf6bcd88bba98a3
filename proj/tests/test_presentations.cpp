#include "doctest.h"

#include "semifree/errors.hpp"
#include "semifree/io.hpp"
#include "semifree/presentations.hpp"
#include "semifree/semifree.hpp"

using namespace semifree;

namespace {

Element n(int i) { return Element::base(std::to_string(i)); }

Json counts() { return read_json(std::string(SEMIFREE_FIXTURES) + "/presentation_counts.json"); }

Semialgebra maybe_table(Element on0, Element on1, Element on_nothing) {
  return Semialgebra::from_table(probe_set(2), {{Element::just(n(0)), on0},
                                                {Element::just(n(1)), on1},
                                                {Element::nothing(), on_nothing}});
}

AlgebraModel unary_and_constant(const Theory& th, std::vector<std::size_t> abar, std::size_t pt) {
  auto carrier = probe_set(abar.size());
  return AlgebraModel(std::move(carrier), th.signature, {std::move(abar), {pt}});
}

}  // namespace

TEST_CASE("theory text round-trips") {
  auto th = convex_semifree_theory(convex_grid(3));
  auto again = parse_theory(to_text(th));
  CHECK(again.signature == th.signature);
  CHECK(again.equations == th.equations);
  auto parsed = parse_theory("# pointed sets with an idempotent\nop abar 1\nop pt 0\nabar(abar(x)) = abar(x)\nabar(pt) = pt\n");
  CHECK(parsed.equations == maybe_semifree_theory().equations);
  CHECK(parsed.equations[1].variables().empty());
}

TEST_CASE("theory parse errors") {
  CHECK_THROWS_AS(parse_theory("op f 1\nf(x,y) = x"), ParseError);
  CHECK_THROWS_AS(parse_theory("op f 1\ng(x) = x"), ParseError);
  CHECK_THROWS_AS(parse_theory("op f one"), ParseError);
  CHECK_THROWS_AS(parse_theory("op f 1\nop f 2"), ParseError);
  CHECK_THROWS_AS(parse_theory("op f 1\nf(x)"), ParseError);
  CHECK_THROWS_AS(parse_theory("op f 1\nf(x = x"), ParseError);
}

TEST_CASE("term evaluation") {
  auto th = maybe_semifree_theory();
  auto zero = unary_and_constant(th, {0, 0}, 0);
  CHECK(eval_term(zero, Term::var("x"), {{"x", n(1)}}) == n(1));
  CHECK(eval_term(zero, parse_term("abar(abar(x))", th.signature), {{"x", n(1)}}) == n(0));
  CHECK_THROWS_AS(eval_term(zero, Term::var("y"), {{"x", n(1)}}), InvariantViolation);
  CHECK_THROWS_AS(eval_term(zero, Term::app("abar"), {}), InvariantViolation);
}

TEST_CASE("equation checking reports the environment") {
  auto th = semilattice_theory();
  // join = left projection: not commutative.
  AlgebraModel left(probe_set(2), th.signature, {{0, 0, 1, 1}, {0}});
  auto r = check_equations(left, th.equations);
  CHECK_FALSE(r.pass);
  REQUIRE(r.counterexample);
  CHECK(r.counterexample->context == "join(x,y) = join(y,x)");
  CHECK(r.counterexample->input == "{x=0, y=1}");
  auto mth = maybe_semifree_theory();
  CHECK(check_equations(unary_and_constant(mth, {0, 0}, 0), {mth.equations[0]}).pass);
}

TEST_CASE("model tables are validated") {
  auto th = maybe_semifree_theory();
  CHECK_THROWS_AS(AlgebraModel(probe_set(2), th.signature, {{0, 0}}), InvariantViolation);
  CHECK_THROWS_AS(AlgebraModel(probe_set(2), th.signature, {{0, 2}, {0}}), InvariantViolation);
  CHECK_THROWS_AS(AlgebraModel(probe_set(2), th.signature, {{0}, {0}}), InvariantViolation);
}

TEST_CASE("frozen model counts") {
  auto c = counts();
  auto grid = convex_grid(4);
  for (std::size_t k = 0; k <= 2; ++k) {
    CAPTURE(k);
    auto x = probe_set(k);
    CHECK(enumerate_models(maybe_semifree_theory(), x).size() == c["maybe_models"][k]);
    CHECK(enumerate_semialgebras(*builtin("maybe"), x, Bound{}).size() == c["maybe_semialgebras"][k]);
    CHECK(enumerate_models(semigroup_semifree_theory(), x).size() == c["nelist_models"][k]);
    CHECK(enumerate_models(convex_semifree_theory(grid), x).size() == c["dist_grid4_models"][k]);
    CHECK(grid_semialgebras(x, grid).size() == c["dist_grid4_models"][k]);
    CHECK(enumerate_models(conjecture_signature(semilattice_theory()), x).size() ==
          c["conjecture_semilattice_models"][k]);
    CHECK(enumerate_semialgebras(*builtin("powerset"), x, Bound{}).size() == c["powerset_semialgebras"][k]);
  }
}

TEST_CASE("pruned enumeration agrees with filtering every table") {
  auto th = maybe_semifree_theory();
  std::size_t models = 0;
  for (std::size_t a0 = 0; a0 < 2; ++a0)
    for (std::size_t a1 = 0; a1 < 2; ++a1)
      for (std::size_t p = 0; p < 2; ++p)
        if (check_equations(unary_and_constant(th, {a0, a1}, p), th.equations).pass) ++models;
  CHECK(models == enumerate_models(th, probe_set(2)).size());
}

TEST_CASE("maybe translations") {
  Bound b;
  auto zero = maybe_table(n(0), n(0), n(0));
  auto m = maybe_to_model(zero, b);
  CHECK(m == unary_and_constant(maybe_semifree_theory(), {0, 0}, 0));
  CHECK(same_structure(*builtin("maybe"), model_to_maybe(m), zero, b));
  CHECK_THROWS_AS(maybe_to_model(maybe_table(n(1), n(0), n(0)), b), ValidityError);
  CHECK_THROWS_AS(model_to_maybe(unary_and_constant(maybe_semifree_theory(), {1, 0}, 0)), ValidityError);
}

TEST_CASE("models with abar = id are the algebras") {
  Bound b;
  auto maybe = builtin("maybe");
  for (std::size_t k = 0; k <= 2; ++k) {
    auto x = probe_set(k);
    for (const auto& m : enumerate_models(maybe_semifree_theory(), x)) {
      bool identity = true;
      for (const auto& e : x) identity = identity && m.apply("abar", std::vector{e}) == e;
      CHECK(identity == check_algebra(*maybe, model_to_maybe(m), b).pass);
    }
  }
}

TEST_CASE("abar of the model is the idempotent part") {
  Bound b;
  auto maybe = builtin("maybe");
  for (const auto& a : enumerate_semialgebras(*maybe, probe_set(2), b)) {
    auto m = maybe_to_model(a, b);
    auto e = idempotent_of(*maybe, a, b);
    for (const auto& x : probe_set(2)) CHECK(e(x) == m.apply("abar", std::vector{x}));
  }
  Bound words;
  words.max_word_len = 3;
  auto nelist = builtin("nelist");
  for (const auto& m : enumerate_models(semigroup_semifree_theory(), probe_set(2))) {
    auto a = restrict_to(*nelist, model_to_semigroup(m), words);
    auto e = idempotent_of(*nelist, a, words);
    for (const auto& x : probe_set(2)) CHECK(e(x) == m.apply("abar", std::vector{x}));
  }
}

TEST_CASE("semigroup translations and the generalized product lemma") {
  Bound b;
  auto th = semigroup_semifree_theory();
  // abar = id, x.y = x
  AlgebraModel left(probe_set(2), th.signature, {{0, 1}, {0, 0, 1, 1}});
  CHECK(check_equations(left, th.equations).pass);
  auto a = model_to_semigroup(left);
  CHECK(check_semialgebra(*builtin("nelist"), a, b).pass);
  CHECK(a(Element::word({n(1), n(0), n(0)})) == n(1));
  CHECK(semigroup_to_model(restrict_to(*builtin("nelist"), a, b), b) == left);
  for (const auto& m : enumerate_models(th, probe_set(2))) {
    CHECK(check_semigroup_lemma(m, 2).pass);
    CHECK(check_semigroup_lemma(m, 3).pass);
    auto s = model_to_semigroup(m);
    for (const auto& x : probe_set(2))
      for (const auto& y : probe_set(2))
        CHECK(s(Element::word({x, y})) == m.apply("mul", std::vector{x, y}));
  }
}

TEST_CASE("skew associativity is evaluated exactly") {
  auto [pq, r] = skew_parameters(Rational(1, 2), Rational(1, 2));
  CHECK(pq == Rational(1, 4));
  CHECK(r == Rational(1, 3));
  auto th = convex_semifree_theory(convex_grid(4));
  auto sig = th.signature;
  Equation instance{parse_term("+[1/2](+[1/2](x,y),z)", sig), parse_term("+[1/4](x,+[1/3](y,z))", sig)};
  CHECK(std::find(th.equations.begin(), th.equations.end(), instance) != th.equations.end());
  CHECK_THROWS_AS(skew_parameters(Rational(1), Rational(1)), InvariantViolation);
}

TEST_CASE("convex translations and the generalized convex lemma") {
  auto grid = convex_grid(4);
  CHECK(grid == std::vector<Rational>{Rational(1, 4), Rational(1, 3), Rational(1, 2), Rational(2, 3), Rational(3, 4)});
  CHECK(grid_distributions(probe_set(2), grid).size() == 7);
  for (const auto& m : enumerate_models(convex_semifree_theory(grid), probe_set(2))) {
    auto lemma = check_convex_lemma(m, grid, 3);
    CHECK(lemma.pass);
    CHECK(lemma.checked > 0);
    auto a = model_to_dist(m, grid);
    for (const auto& x : probe_set(2)) CHECK(a(Element::dist({{x, Rational(1)}})) == m.apply("abar", std::vector{x}));
    CHECK(dist_to_model(a, grid) == m);
  }
}

TEST_CASE("presentation isomorphisms") {
  for (std::size_t k = 0; k <= 2; ++k) {
    auto r = check_presentation_iso("maybe", probe_set(k));
    CHECK_MESSAGE(r.pass, r.render());
  }
  CHECK(check_presentation_iso("maybe", probe_set(2)).note == "4 ↔ 4 bijection");
  auto nelist = check_presentation_iso("nelist", probe_set(2));
  CHECK_MESSAGE(nelist.pass, nelist.render());
  CHECK(nelist.note == "10 ↔ 10 bijection");
  auto dist = check_presentation_iso("dist", probe_set(2));
  CHECK_MESSAGE(dist.pass, dist.render());
  CHECK(dist.note == "4 ↔ 4 bijection");
  CHECK_THROWS_AS(check_presentation_iso("powerset", probe_set(1)), UnknownMonad);
}

TEST_CASE("the conjectured presentation reproduces the known ones") {
  auto pointed = conjecture_signature(pointed_set_theory());
  CHECK(pointed.equations == maybe_semifree_theory().equations);
  CHECK(compare_theories(pointed, maybe_semifree_theory(), 2).pass);
  CHECK(compare_theories(conjecture_signature(semigroup_theory()), semigroup_semifree_theory(), 2).pass);
  auto grid = convex_grid(4);
  CHECK(compare_theories(conjecture_signature(convex_theory(grid)), convex_semifree_theory(grid), 2).pass);
  CHECK_THROWS_AS(conjecture_signature(maybe_semifree_theory()), InvariantViolation);
}

TEST_CASE("compare_theories finds a separating model") {
  auto r = compare_theories(conjecture_signature(semigroup_theory()), [] {
    auto th = semigroup_semifree_theory();
    th.equations.push_back({parse_term("abar(x)", th.signature), Term::var("x")});
    return th;
  }(), 2);
  CHECK_FALSE(r.pass);
}
