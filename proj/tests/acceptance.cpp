// One line per acceptance criterion; exit status 1 if any line fails.

#include "semifree/errors.hpp"
#include "semifree/io.hpp"
#include "semifree/presentations.hpp"
#include "semifree/roundtrip.hpp"
#include "semifree/search.hpp"
#include "semifree/semifree.hpp"

#include <chrono>
#include <iostream>
#include <sstream>

using namespace semifree;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Records the first failing report and keeps going.
struct Tally {
  bool pass = true;
  std::size_t reports = 0;
  std::string first_failure;

  void add(const Report& r) {
    ++reports;
    if (!r.pass && pass) {
      pass = false;
      first_failure = r.render();
    }
  }
  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      first_failure = what;
    }
  }
  Outcome outcome(const std::string& summary) const {
    return {pass, pass ? summary : summary + "\n" + first_failure};
  }
};

Bound with_words(int n) {
  Bound b;
  b.max_word_len = n;
  return b;
}
Bound with_denominator(int n) {
  Bound b;
  b.max_denominator = n;
  return b;
}
Bound with_subsets(int n) {
  Bound b;
  b.max_subset_size = n;
  return b;
}

Outcome semifree_monad_laws() {
  Tally t;
  auto laws = [&](const char* m, std::size_t k, const Bound& b, std::optional<Bound> nested = std::nullopt) {
    t.add(check_monad_laws(*semifree_of(builtin(m)), probe_set(k), b, nested));
  };
  for (std::size_t k = 0; k <= 3; ++k) laws("maybe", k, Bound{});
  // Beyond one point the third layer of powerset-semifree is astronomically
  // large, so the outer two layers only hold subsets of size <= 2.
  for (std::size_t k = 0; k <= 1; ++k) laws("powerset", k, Bound{});
  for (std::size_t k = 2; k <= 3; ++k) laws("powerset", k, Bound{}, with_subsets(2));
  laws("nelist", 0, with_words(3));
  laws("nelist", 1, with_words(3));
  laws("nelist", 2, with_words(3), with_words(2));
  for (std::size_t k = 0; k <= 2; ++k) laws("dist", k, with_denominator(2));
  return t.outcome(std::to_string(t.reports) + " carriers");
}

Outcome ms_isomorphism() {
  Tally t;
  auto counts = read_json(std::string(SEMIFREE_FIXTURES) + "/presentation_counts.json").at("maybe_semialgebras");
  auto maybe = builtin("maybe");
  std::string notes;
  for (std::size_t k = 1; k <= 2; ++k) {
    auto r = check_ms_iso(maybe, probe_set(k), Bound{});
    t.add(r);
    auto expected = counts[k].get<std::size_t>();
    auto want = std::to_string(expected) + " ↔ " + std::to_string(expected) + " bijection";
    t.require(r.note == want, "size " + std::to_string(k) + ": " + r.note + ", expected " + want);
    notes += (notes.empty() ? "" : ", ") + r.note;
  }
  auto tables = all_structures(*maybe, probe_set(2), Bound{});
  t.require(tables.size() == 8, std::to_string(tables.size()) + " candidate tables, expected 8");
  for (const auto& a : tables)
    t.require(check_eq13(*maybe, a, Bound{}).pass == check_semialgebra(*maybe, a, Bound{}).pass,
              "mixed associativity square disagrees with associativity");
  return t.outcome(notes + "; mixed square agrees on 8 tables");
}

Outcome idempotents() {
  struct Item {
    MonadPtr m;
    Semialgebra a;
    Bound b;
  };
  std::vector<Item> all;
  auto maybe = builtin("maybe"), powerset = builtin("powerset"), nelist = builtin("nelist"), dist = builtin("dist");
  for (std::size_t k = 0; k <= 2; ++k) {
    for (auto& a : enumerate_semialgebras(*maybe, probe_set(k), Bound{})) all.push_back({maybe, a, Bound{}});
    for (auto& a : enumerate_semialgebras(*powerset, probe_set(k), Bound{})) all.push_back({powerset, a, Bound{}});
    for (auto& a : enumerate_semialgebras(*nelist, probe_set(k), with_words(3))) all.push_back({nelist, a, with_words(3)});
    for (auto& a : grid_semialgebras(probe_set(k), convex_grid(4))) all.push_back({dist, a, with_denominator(2)});
    for (const auto& m : enumerate_models(semigroup_semifree_theory(), probe_set(k)))
      all.push_back({nelist, restrict_to(*nelist, model_to_semigroup(m), with_words(3)), with_words(3)});
  }
  // Structures produced by the liftings of the weak laws.
  for (const auto* tn : {"maybe", "powerset"}) {
    auto r = search_laws({maybe, builtin(tn), 2, Bound{}});
    for (std::size_t i = 0; i < r.laws.size(); ++i) {
      if (r.classifications[i].verdict == Verdict::Neither) continue;
      auto lift = law_to_lifting(r.laws[i]);
      for (const auto& a : semialgebra_family(*maybe, 1, Bound{})) all.push_back({maybe, lift(a), Bound{}});
    }
  }
  Tally t;
  for (const auto& item : all) {
    try {
      auto e = idempotent_of(*item.m, item.a, item.b);
      t.require(compose(e, e) == e, "idempotent part is not idempotent");
    } catch (const std::exception& ex) {
      t.require(false, item.m->name() + "-semialgebra on " + item.a.carrier().to_string() + ": " + ex.what());
    }
  }
  return t.outcome(std::to_string(all.size()) + " semialgebras");
}

Outcome lifting_correspondence() {
  Tally t;
  std::size_t weak = 0;
  auto maybe = builtin("maybe");
  auto family = semialgebra_family(*maybe, 2, Bound{});
  for (const auto* tn : {"maybe", "powerset"}) {
    auto r = search_laws({maybe, builtin(tn), 2, Bound{}});
    for (std::size_t i = 0; i < r.laws.size(); ++i) {
      if (r.classifications[i].verdict == Verdict::Neither) continue;
      ++weak;
      t.add(check_lifting_roundtrip(r.laws[i], family));
    }
  }
  t.require(weak > 0, "no weak laws found");
  return t.outcome(std::to_string(weak) + " weak laws");
}

Outcome semifree_correspondence() {
  Tally t;
  auto start = std::chrono::steady_clock::now();
  std::size_t weak = 0, strong = 0;
  auto maybe = builtin("maybe");
  for (const auto* tn : {"maybe", "powerset"}) {
    auto r = search_laws({maybe, builtin(tn), 2, Bound{}});
    for (std::size_t i = 0; i < r.laws.size(); ++i) {
      if (r.classifications[i].verdict == Verdict::Neither) continue;
      ++weak;
      t.add(check_weak_to_strong_roundtrip(r.laws[i]));
    }
    auto s = search_laws({semifree_of(maybe), builtin(tn), 2, Bound{}});
    for (std::size_t i = 0; i < s.laws.size(); ++i) {
      if (s.classifications[i].verdict != Verdict::Strong || !check_condition7(s.laws[i]).pass) continue;
      ++strong;
      t.add(check_strong_to_weak_roundtrip(s.laws[i]));
    }
  }
  auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  t.require(secs < 300, "took " + std::to_string(secs) + " s");
  std::ostringstream out;
  out << weak << " weak laws, " << strong << " strong laws satisfying the inr condition";
  return t.outcome(out.str());
}

Outcome presentations() {
  Tally t;
  for (std::size_t k = 0; k <= 2; ++k) t.add(check_presentation_iso("maybe", probe_set(k)));
  t.add(check_presentation_iso("nelist", probe_set(2)));
  auto grid = convex_grid(4);
  t.add(check_presentation_iso("dist", probe_set(2)));
  for (const auto& m : enumerate_models(convex_semifree_theory(grid), probe_set(2))) {
    t.add(check_convex_lemma(m, grid, 3));
    t.add(check_equations(m, convex_semifree_theory(grid).equations));
  }
  auto [pq, r] = skew_parameters(Rational(1, 2), Rational(1, 2));
  t.require(pq == Rational(1, 4) && r == Rational(1, 3), "skew parameters " + to_string(pq) + ", " + to_string(r));
  return t.outcome("maybe on sizes 0..2, nelist and dist on size 2, skew (1/2, 1/2) -> (1/4, 1/3)");
}

Outcome conjecture() {
  Tally t;
  t.add(compare_theories(conjecture_signature(pointed_set_theory()), maybe_semifree_theory(), 2));
  t.add(compare_theories(conjecture_signature(semigroup_theory()), semigroup_semifree_theory(), 2));
  auto th = conjecture_signature(semilattice_theory());
  std::string counts;
  for (std::size_t k = 0; k <= 2; ++k) {
    auto models = enumerate_models(th, probe_set(k)).size();
    auto semis = enumerate_semialgebras(*builtin("powerset"), probe_set(k), Bound{}).size();
    t.require(models == semis, "size " + std::to_string(k) + ": " + std::to_string(models) + " models, " +
                                   std::to_string(semis) + " powerset-semialgebras");
    counts += (counts.empty() ? "" : "/") + std::to_string(models);
  }
  return t.outcome("powerset models = semialgebras = " + counts);
}

Outcome monad_morphism() {
  Tally t;
  for (const auto* m : {"maybe", "powerset", "nelist", "dist"}) t.add(check_monad_morphism_eta_id(builtin(m), 2, Bound{}));
  return t.outcome("4 monads");
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {1, "semifree monad laws", semifree_monad_laws},
      {2, "Ms-algebras vs M-semialgebras", ms_isomorphism},
      {3, "idempotent part of every semialgebra", idempotents},
      {4, "weak laws vs liftings", lifting_correspondence},
      {5, "weak laws vs strong semifree laws", semifree_correspondence},
      {6, "presentations", presentations},
      {7, "conjectured presentations", conjecture},
      {8, "[eta, id] monad morphism", monad_morphism},
  };
  bool all = true;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    all = all && o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name << " (" << o.detail << ")\n";
  }
  return all ? 0 : 1;
}
