#include "doctest.h"

#include "semifree/errors.hpp"
#include "semifree/io.hpp"
#include "semifree/search.hpp"

#include <algorithm>
#include <cstdlib>

using namespace semifree;

namespace {

std::string fixture(const std::string& name) { return std::string(SEMIFREE_FIXTURES) + "/" + name; }

struct Expected {
  const char* m;
  const char* t;
  std::size_t natural, strong, weak_only, neither;
  const char* file;
};

// Counts from the independent brute-force oracle, probes of size <= 2.
const Expected kExpected[] = {
    {"maybe", "maybe", 12, 1, 1, 10, "search_maybe_maybe.json"},
    {"maybe", "powerset", 16, 1, 0, 15, "search_maybe_powerset.json"},
    {"maybe-semifree", "maybe", 128, 2, 1, 125, "search_maybe-semifree_maybe.json"},
};

bool contains(const SearchResult& r, const NatTrans& law) {
  return std::any_of(r.laws.begin(), r.laws.end(), [&](const NatTrans& l) { return same_components(l, law); });
}

}  // namespace

TEST_CASE("frozen law counts") {
  for (const auto& e : kExpected) {
    CAPTURE(e.m);
    CAPTURE(e.t);
    auto r = search_laws({monad_by_name(e.m), monad_by_name(e.t), 2, Bound{}});
    CHECK(r.laws.size() == e.natural);
    CHECK(r.strong == e.strong);
    CHECK(r.weak_only == e.weak_only);
    CHECK(r.neither == e.neither);
    CHECK(r.strong <= r.strong + r.weak_only);
    for (const auto& l : r.laws) CHECK(check_naturality(l).pass);
  }
}

TEST_CASE("canonical laws are planted witnesses") {
  Bound b;
  for (const auto* t : {"maybe", "powerset"}) {
    auto r = search_laws({builtin("maybe"), builtin(t), 2, b});
    CHECK(contains(r, canonical_maybe_law(builtin(t), 2, b)));
  }
}

TEST_CASE("a single probe leaves only identity squares") {
  Bound b;
  auto maybe = builtin("maybe");
  // On the empty probe MT(0) = {Nothing, Just(Nothing)} and TM(0) likewise:
  // every one of the 4 tables is natural.
  auto r = enumerate_nat_trans({maybe, maybe, 0, b});
  CHECK(r.size() == 4);
}

TEST_CASE("results are sorted and deterministic") {
  Bound b;
  auto a = search_laws({builtin("maybe"), builtin("powerset"), 2, b});
  auto c = search_laws({builtin("maybe"), builtin("powerset"), 2, b});
  REQUIRE(a.laws.size() == c.laws.size());
  for (std::size_t i = 0; i < a.laws.size(); ++i) CHECK(same_components(a.laws[i], c.laws[i]));
  for (std::size_t i = 1; i < a.laws.size(); ++i) CHECK(a.laws[i - 1].to_string() < a.laws[i].to_string());
}

TEST_CASE("the cap aborts deterministically") {
  Bound b;
  SearchSpace s{builtin("maybe"), builtin("powerset"), 2, b};
  try {
    search_laws(s, 5);
    FAIL("expected an abort");
  } catch (const SearchAborted& e) {
    CHECK(e.nodes > 5);
    CHECK(e.stage <= 2);
  }
  auto full = search_laws(s);
  CHECK(full.nodes > 0);
  CHECK(search_laws(s, full.nodes).laws.size() == 16);
}

TEST_CASE("SEMIFREE_CAP overrides the default cap") {
  CHECK(search_cap() == 10'000'000);
  setenv("SEMIFREE_CAP", "3", 1);
  CHECK(search_cap() == 3);
  CHECK_THROWS_AS(search_laws({builtin("maybe"), builtin("maybe"), 2, Bound{}}), SearchAborted);
  setenv("SEMIFREE_CAP", "lots", 1);
  CHECK_THROWS_AS(search_cap(), InvariantViolation);
  unsetenv("SEMIFREE_CAP");
}

TEST_CASE("searching an unbounded monad is refused") {
  CHECK_THROWS_AS(search_laws({builtin("nelist"), builtin("maybe"), 2, Bound{}}), InvariantViolation);
}

TEST_CASE("fixtures reload, revalidate and match a fresh search") {
  for (const auto& e : kExpected) {
    CAPTURE(e.file);
    auto doc = read_json(fixture(e.file));
    CHECK(doc.at("schema") == kReportSchema);
    CHECK(doc.at("counts").at("natural") == e.natural);
    auto stored = laws_from_json(doc);
    SearchSpace s{monad_by_name(e.m), monad_by_name(e.t), 2, Bound{}};
    auto fresh = search_laws(s);
    REQUIRE(stored.size() == fresh.laws.size());
    for (std::size_t i = 0; i < stored.size(); ++i) {
      CHECK(check_naturality(stored[i].first).pass);
      CHECK(to_string(classify_law(stored[i].first).verdict) == stored[i].second);
      CHECK(same_components(stored[i].first, fresh.laws[i]));
    }
    CHECK(to_json(s, fresh) == doc);
  }
}
