#include "doctest.h"

#include "semifree/dl.hpp"
#include "semifree/errors.hpp"
#include "semifree/roundtrip.hpp"
#include "semifree/search.hpp"

#include <algorithm>

using namespace semifree;

namespace {

Element n(int i) { return Element::base(std::to_string(i)); }

// Same tables as `lambda` except that input e of component k maps to v.
NatTrans patched(const NatTrans& lambda, std::size_t k, const Element& e, const Element& v) {
  std::vector<NatTrans::Component> comps(lambda.max_probe() + 1);
  for (std::size_t i = 0; i <= lambda.max_probe(); ++i)
    for (const auto& [x, y] : lambda.entries(i)) comps[i].emplace(x, y);
  comps[k][e] = v;
  return NatTrans(lambda.m(), lambda.t(), lambda.max_probe(), lambda.bound(), std::move(comps));
}

// Nothing |-> Just(Nothing), identity elsewhere: differs from the canonical
// law only at Just(Nothing).
NatTrans collapsing_law(const Bound& b) {
  auto maybe = builtin("maybe");
  return NatTrans::tabulate(maybe, maybe, 2, b, [](const Element& e) {
    return e == Element::nothing() ? Element::just(Element::nothing()) : e;
  });
}

}  // namespace

TEST_CASE("the canonical maybe law is natural and strong") {
  Bound b;
  for (const auto* t : {"maybe", "powerset"}) {
    CAPTURE(t);
    auto lambda = canonical_maybe_law(builtin(t), 2, b);
    CHECK(check_naturality(lambda).pass);
    auto c = classify_law(lambda);
    CHECK(c.verdict == Verdict::Strong);
    CHECK(c.unit_m.pass);
    CHECK(c.unit_t.pass);
    CHECK(c.mult_m.pass);
    CHECK(c.mult_t.pass);
  }
  auto lambda = canonical_maybe_law(builtin("maybe"), 2, b);
  CHECK(lambda(Element::nothing()) == Element::just(Element::nothing()));
  CHECK(lambda(Element::just(Element::nothing())) == Element::nothing());
  CHECK(lambda(Element::just(Element::just(n(1)))) == Element::just(Element::just(n(1))));
}

TEST_CASE("components extend along relabelling and stop at the probe bound") {
  Bound b;
  auto lambda = canonical_maybe_law(builtin("maybe"), 1, b);
  auto x = Element::base("x");
  CHECK(lambda(Element::just(Element::just(x))) == Element::just(Element::just(x)));
  auto ps = canonical_maybe_law(builtin("powerset"), 1, b);
  CHECK_THROWS_AS(ps(Element::just(Element::subset({n(0), n(1)}))), OutOfReach);
}

TEST_CASE("a perturbed entry breaks naturality") {
  Bound b;
  auto lambda = canonical_maybe_law(builtin("maybe"), 2, b);
  auto bad = patched(lambda, 2, Element::just(Element::just(n(0))), Element::just(Element::just(n(1))));
  auto r = check_naturality(bad);
  CHECK_FALSE(r.pass);
  REQUIRE(r.counterexample);
  CHECK(r.counterexample->input == "Just(Just(0))");
  CHECK_THROWS_AS(classify_law(bad), ValidityError);
  CHECK_THROWS_AS(weak_to_strong(bad), ValidityError);
}

TEST_CASE("component tables must be total and stay inside the probe") {
  Bound b;
  auto maybe = builtin("maybe");
  std::vector<NatTrans::Component> comps(1);
  CHECK_THROWS_AS(NatTrans(maybe, maybe, 0, b, comps), InvariantViolation);
  comps[0].emplace(Element::nothing(), Element::just(Element::just(n(0))));
  comps[0].emplace(Element::just(Element::nothing()), Element::nothing());
  CHECK_THROWS_AS(NatTrans(maybe, maybe, 0, b, comps), InvariantViolation);
}

TEST_CASE("fixing Just(Nothing) gives a weak law that is not strong") {
  Bound b;
  auto id = collapsing_law(b);
  CHECK(check_naturality(id).pass);
  auto c = classify_law(id);
  CHECK(c.verdict == Verdict::WeakOnly);
  CHECK_FALSE(c.unit_m.pass);
  REQUIRE(c.unit_m.counterexample);
  CHECK(c.unit_m.counterexample->input == "Nothing");
  auto plain = NatTrans::tabulate(builtin("maybe"), builtin("maybe"), 2, b, [](const Element& e) { return e; });
  CHECK(classify_law(plain).verdict == Verdict::Neither);
}

TEST_CASE("the weak-only lifting sends algebras to semialgebras that are not algebras") {
  Bound b;
  auto maybe = builtin("maybe");
  auto lift = law_to_lifting(collapsing_law(b));
  bool saw_proper = false;
  for (const auto& a : semialgebra_family(*maybe, 2, b)) {
    auto lifted = lift(a);
    CHECK(check_semialgebra(*maybe, lifted, b).pass);
    if (check_algebra(*maybe, a, b).pass && !check_algebra(*maybe, lifted, b).pass) saw_proper = true;
  }
  CHECK(saw_proper);
  CHECK(verify_lifting(lift, semialgebra_family(*maybe, 2, b)).pass);
}

TEST_CASE("a non-weak transformation does not give a lifting") {
  Bound b;
  auto maybe = builtin("maybe");
  auto fam = semialgebra_family(*maybe, 2, b);
  auto r = search_laws({maybe, maybe, 2, b});
  std::size_t caught = 0, neither = 0;
  for (std::size_t i = 0; i < r.laws.size(); ++i) {
    if (r.classifications[i].verdict != Verdict::Neither) continue;
    ++neither;
    CHECK_THROWS_AS(law_to_lifting(r.laws[i]), ValidityError);
    if (!verify_lifting(lifting_from_transformation(r.laws[i]), fam).pass) ++caught;
  }
  CHECK(neither == 10);
  CHECK(caught > 0);
}

TEST_CASE("liftings of weak laws and their round trips") {
  Bound b;
  for (const auto* t : {"maybe", "powerset"}) {
    CAPTURE(t);
    auto m = builtin("maybe");
    auto fam = semialgebra_family(*m, 2, b);
    auto r = search_laws({m, builtin(t), 2, b});
    for (std::size_t i = 0; i < r.laws.size(); ++i) {
      if (r.classifications[i].verdict == Verdict::Neither) continue;
      auto rt = check_lifting_roundtrip(r.laws[i], fam);
      CHECK_MESSAGE(rt.pass, rt.render());
      auto ws = check_weak_to_strong_roundtrip(r.laws[i]);
      CHECK_MESSAGE(ws.pass, ws.render());
    }
  }
}

TEST_CASE("the stability condition is what separates weak-law liftings") {
  Bound b;
  auto maybe = builtin("maybe");
  auto fam = semialgebra_family(*maybe, 2, b);
  auto w = find_condition6_violation(canonical_maybe_law(maybe, 2, b), fam);
  REQUIRE(w);
  CHECK_FALSE(check_lifting_condition6(w->lifting, fam).pass);
  CHECK_FALSE(check_algebra(*maybe, w->replaced, b).pass);
  // Patching a single structure never produced a genuine lifting that is not stable.
  CHECK_FALSE(w->still_a_lifting);
}

TEST_CASE("the inr condition and its simplified form agree on every semifree law") {
  Bound b;
  auto r = search_laws({monad_by_name("maybe-semifree"), builtin("maybe"), 2, b});
  std::size_t with7 = 0;
  for (std::size_t i = 0; i < r.laws.size(); ++i) {
    if (r.classifications[i].verdict == Verdict::Neither) continue;
    bool seven = check_condition7(r.laws[i]).pass;
    CHECK(seven == check_condition8(r.laws[i]).pass);
    if (r.classifications[i].verdict == Verdict::Strong && seven) {
      ++with7;
      auto rt = check_strong_to_weak_roundtrip(r.laws[i]);
      CHECK_MESSAGE(rt.pass, rt.render());
    }
  }
  CHECK(with7 == 2);
}

TEST_CASE("weak_to_strong hits exactly the strong semifree laws satisfying the inr condition") {
  Bound b;
  auto maybe = builtin("maybe");
  auto weak = search_laws({maybe, maybe, 2, b});
  std::vector<std::string> images;
  for (std::size_t i = 0; i < weak.laws.size(); ++i)
    if (weak.classifications[i].verdict != Verdict::Neither) images.push_back(weak_to_strong(weak.laws[i]).to_string());
  auto strong = search_laws({monad_by_name("maybe-semifree"), maybe, 2, b});
  std::vector<std::string> found;
  for (std::size_t i = 0; i < strong.laws.size(); ++i)
    if (strong.classifications[i].verdict == Verdict::Strong && check_condition7(strong.laws[i]).pass)
      found.push_back(strong.laws[i].to_string());
  std::sort(images.begin(), images.end());
  std::sort(found.begin(), found.end());
  CHECK(images == found);
}

TEST_CASE("the canonical lifting of a free semialgebra is a semialgebra") {
  Bound b;
  auto maybe = builtin("maybe");
  auto lift = law_to_lifting(canonical_maybe_law(maybe, 2, b));
  for (std::size_t k = 0; k <= 1; ++k) {
    auto lifted = lift(free_semialgebra(maybe, probe_set(k), b));
    CHECK(check_semialgebra(*maybe, lifted, b).pass);
    CHECK(lifted.carrier() == maybe->apply(maybe->apply(probe_set(k), b), b));
  }
}

TEST_CASE("breaking naturality breaks the lifting") {
  Bound b;
  auto maybe = builtin("maybe");
  auto lambda = canonical_maybe_law(maybe, 2, b);
  // Evaluation relabels supports onto the probe of the same size, so the
  // entry must have full support to be seen by the lifting.
  auto bad = patched(lambda, 1, Element::just(Element::just(n(0))), Element::nothing());
  REQUIRE_FALSE(check_naturality(bad).pass);
  auto r = verify_lifting(lifting_from_transformation(bad), semialgebra_family(*maybe, 2, b));
  CHECK_FALSE(r.pass);
  bool hom_part_failed = false;
  for (std::size_t i = 1; i < r.parts.size(); ++i) hom_part_failed = hom_part_failed || !r.parts[i].pass;
  CHECK(hom_part_failed);
}

TEST_CASE("the stability condition is automatic on algebras") {
  Bound b;
  auto maybe = builtin("maybe");
  std::vector<Semialgebra> algebras;
  for (const auto& a : semialgebra_family(*maybe, 2, b))
    if (check_algebra(*maybe, a, b).pass) algebras.push_back(a);
  REQUIRE_FALSE(algebras.empty());
  auto r = search_laws({maybe, maybe, 2, b});
  for (const auto& law : r.laws)
    CHECK(check_lifting_condition6(lifting_from_transformation(law), algebras).pass);
}

TEST_CASE("the strong image restricts to T inl on the unit summand") {
  Bound b;
  auto maybe = builtin("maybe");
  auto ms = semifree_of(maybe);
  for (const auto& law : {canonical_maybe_law(maybe, 2, b), collapsing_law(b)}) {
    auto delta = weak_to_strong(law);
    CHECK(check_condition8(delta).pass);
    for (const auto& t : maybe->enumerate(probe_set(2), b))
      CHECK(delta(inl(t)) == maybe->fmap([](const Element& x) { return inl(x); }, t));
    for (std::size_t k = 0; k <= 2; ++k)
      for (const auto& t : maybe->enumerate(probe_set(k), b))
        CHECK(delta(ms->unit(t)) == maybe->fmap([&](const Element& x) { return ms->unit(x); }, t));
  }
}

TEST_CASE("strong_to_weak rejects tables violating the inr condition") {
  Bound b;
  auto r = search_laws({monad_by_name("maybe-semifree"), builtin("maybe"), 2, b});
  std::size_t rejected = 0;
  for (const auto& law : r.laws) {
    if (check_condition7(law).pass) continue;
    CHECK_THROWS_AS(strong_to_weak(law), ValidityError);
    ++rejected;
  }
  CHECK(rejected > 0);
}
