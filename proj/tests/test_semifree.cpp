#include "doctest.h"

#include "semifree/errors.hpp"
#include "semifree/semifree.hpp"

using namespace semifree;

namespace {

Element n(int i) { return Element::base(std::to_string(i)); }

Semialgebra maybe_table(Element on0, Element on1, Element on_nothing) {
  return Semialgebra::from_table(probe_set(2), {{Element::just(n(0)), on0},
                                                {Element::just(n(1)), on1},
                                                {Element::nothing(), on_nothing}});
}

}  // namespace

TEST_CASE("semifree maybe on one point") {
  auto ms = semifree_of(builtin("maybe"));
  CHECK(ms->name() == "maybe-semifree");
  auto xs = ms->enumerate(probe_set(1), Bound{});
  CHECK(xs.size() == 3);
  auto x = n(0);
  CHECK(ms->mult(inr(Element::just(inl(x)))) == inr(Element::just(x)));
  for (const auto& m : xs) CHECK(ms->mult(inl(m)) == m);
  CHECK(ms->unit(x) == inl(x));
}

TEST_CASE("monad_by_name") {
  CHECK(monad_by_name("dist-semifree")->name() == "dist-semifree");
  CHECK(monad_by_name("maybe")->name() == "maybe");
  CHECK_THROWS_AS(monad_by_name("bogus-semifree"), UnknownMonad);
  CHECK_THROWS_AS(monad_by_name("-semifree"), UnknownMonad);
}

TEST_CASE("semifree monad laws on small carriers") {
  Bound b;
  for (std::size_t k = 0; k <= 3; ++k) CHECK(check_monad_laws(*semifree_of(builtin("maybe")), probe_set(k), b).pass);
  for (std::size_t k = 0; k <= 1; ++k)
    CHECK(check_monad_laws(*semifree_of(builtin("powerset")), probe_set(k), b).pass);
  for (std::size_t k = 0; k <= 2; ++k) CHECK(check_monad_laws(*semifree_of(builtin("dist")), probe_set(k), b).pass);
  Bound short_words = b;
  short_words.max_word_len = 2;
  CHECK(check_monad_laws(*semifree_of(builtin("nelist")), probe_set(1), short_words).pass);
}

TEST_CASE("semifree functor and naturality") {
  Bound b;
  auto ms = semifree_of(builtin("maybe"));
  CHECK(check_functor_laws(*ms, probe_set(2), probe_set(2), probe_set(2), b).pass);
  CHECK(check_unit_mult_naturality(*ms, probe_set(2), probe_set(2), b).pass);
}

TEST_CASE("translation to and from Ms-algebras") {
  Bound b;
  auto maybe = builtin("maybe");
  auto zero = maybe_table(n(0), n(0), n(0));
  auto alpha = to_ms_algebra(maybe, zero, b);
  CHECK(alpha(inl(n(1))) == n(1));
  CHECK(alpha(inr(Element::just(n(1)))) == n(0));
  CHECK(alpha(inr(Element::nothing())) == n(0));
  auto ms = semifree_of(maybe);
  CHECK(check_algebra(*ms, alpha, b).pass);
  CHECK(same_structure(*maybe, from_ms_algebra(maybe, alpha, b), zero, b));
  CHECK_THROWS_AS(to_ms_algebra(maybe, maybe_table(n(1), n(0), n(0)), b), ValidityError);

  auto fr = free_semialgebra(maybe, probe_set(2), b);
  CHECK(check_algebra(*ms, to_ms_algebra(maybe, fr, b), b).pass);
}

TEST_CASE("the two sides of the isomorphism match on maybe") {
  Bound b;
  auto maybe = builtin("maybe");
  auto ms = semifree_of(maybe);
  for (std::size_t k = 0; k <= 2; ++k) {
    auto carrier = probe_set(k);
    auto semis = enumerate_semialgebras(*maybe, carrier, b);
    std::vector<Semialgebra> algs;
    for (auto& s : all_structures(*ms, carrier, b))
      if (check_algebra(*ms, s, b).pass) algs.push_back(std::move(s));
    CHECK(semis.size() == algs.size());
    for (const auto& a : semis) CHECK(same_structure(*maybe, from_ms_algebra(maybe, to_ms_algebra(maybe, a, b), b), a, b));
    for (const auto& alpha : algs)
      CHECK(same_structure(*ms, to_ms_algebra(maybe, from_ms_algebra(maybe, alpha, b), b), alpha, b));
    // homomorphisms transport
    for (const auto& a : semis)
      for (const auto& c : semis)
        for (const auto& f : all_functions(carrier, carrier))
          CHECK(check_homomorphism(*maybe, a, c, f, b).pass ==
                check_homomorphism(*ms, to_ms_algebra(maybe, a, b), to_ms_algebra(maybe, c, b), f, b).pass);
  }
}

TEST_CASE("the mixed associativity square agrees with associativity on every candidate table") {
  Bound b;
  auto maybe = builtin("maybe");
  for (std::size_t k = 0; k <= 2; ++k) {
    auto tables = all_structures(*maybe, probe_set(k), b);
    for (const auto& a : tables) CHECK(check_eq13(*maybe, a, b).pass == check_semialgebra(*maybe, a, b).pass);
  }
  CHECK(check_eq13(*maybe, free_semialgebra(maybe, probe_set(2), b), b).pass);
}

TEST_CASE("idempotent part") {
  Bound b;
  auto maybe = builtin("maybe");
  auto zero = maybe_table(n(0), n(0), n(0));
  CHECK(idempotent_of(*maybe, zero, b) == FinFunction(probe_set(2), probe_set(2), {n(0), n(0)}));
  CHECK(idempotent_of(*maybe, maybe_table(n(0), n(1), n(1)), b) == identity(probe_set(2)));
  CHECK_THROWS_AS(idempotent_of(*maybe, maybe_table(n(1), n(0), n(0)), b), ValidityError);
}

TEST_CASE("[eta, id] is a monad morphism") {
  Bound b;
  for (const auto* name : {"maybe", "powerset", "nelist", "dist"}) {
    CAPTURE(name);
    CHECK(check_monad_morphism_eta_id(builtin(name), 2, b).pass);
  }
  auto ms = semifree_of(builtin("maybe"));
  CHECK(copair([](const Element& x) { return builtin("maybe")->unit(x); }, [](const Element& m) { return m; })(
            ms->unit(n(0))) == Element::just(n(0)));
}
