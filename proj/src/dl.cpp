#include "semifree/dl.hpp"

#include "semifree/errors.hpp"

#include <algorithm>

namespace semifree {

std::string Composite::name() const { return outer->name() + "." + inner->name(); }

Element Composite::fmap(const ElementMap& f, const Element& e) const {
  const auto& in = *inner;
  return outer->fmap([&](const Element& t) { return in.fmap(f, t); }, e);
}

std::vector<Element> Composite::enumerate(const FinSet& x, const Bound& b) const {
  return outer->enumerate(FinSet::of_unique(inner->enumerate(x, b)), b);
}

FinSet Composite::support(const Element& e) const {
  std::vector<Element> leaves;
  fmap(
      [&](const Element& x) {
        leaves.push_back(x);
        return x;
      },
      e);
  return FinSet::of_unique(std::move(leaves));
}

NatTrans::NatTrans(MonadPtr m, MonadPtr t, std::size_t max_probe, Bound b, std::vector<Component> components)
    : m_(std::move(m)), t_(std::move(t)), max_probe_(max_probe), bound_(b) {
  if (components.size() != max_probe_ + 1)
    throw InvariantViolation("expected " + std::to_string(max_probe_ + 1) + " components, got " +
                             std::to_string(components.size()));
  auto src = source();
  auto tgt = target();
  for (std::size_t n = 0; n <= max_probe_; ++n) {
    auto probe = probe_set(n);
    auto inputs = src.enumerate(probe, bound_);
    if (components[n].size() != inputs.size())
      throw InvariantViolation("component " + std::to_string(n) + " has " + std::to_string(components[n].size()) +
                               " entries, " + src.name() + " has " + std::to_string(inputs.size()));
    for (const auto& e : inputs) {
      auto it = components[n].find(e);
      if (it == components[n].end())
        throw InvariantViolation("component " + std::to_string(n) + " misses " + e.to_string());
      for (const auto& y : tgt.support(it->second))
        if (!probe.contains(y))
          throw InvariantViolation("component " + std::to_string(n) + " sends " + e.to_string() + " to " +
                                   it->second.to_string() + ", outside " + tgt.name() + probe.to_string());
    }
  }
  components_ = std::make_shared<const std::vector<Component>>(std::move(components));
}

NatTrans NatTrans::tabulate(MonadPtr m, MonadPtr t, std::size_t max_probe, Bound b, const ElementMap& f) {
  Composite src{m, t};
  std::vector<Component> comps(max_probe + 1);
  for (std::size_t n = 0; n <= max_probe; ++n)
    for (const auto& e : src.enumerate(probe_set(n), b)) comps[n].emplace(e, f(e));
  return NatTrans(std::move(m), std::move(t), max_probe, b, std::move(comps));
}

std::optional<Element> NatTrans::component(std::size_t n, const Element& e) const {
  if (n > max_probe_) return std::nullopt;
  const auto& c = (*components_)[n];
  auto it = c.find(e);
  if (it == c.end()) return std::nullopt;
  return it->second;
}

std::vector<std::pair<Element, Element>> NatTrans::entries(std::size_t n) const {
  if (n > max_probe_) return {};
  const auto& c = (*components_)[n];
  std::vector<std::pair<Element, Element>> out(c.begin(), c.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

Element NatTrans::operator()(const Element& e) const {
  auto src = source();
  auto s = src.support(e);
  if (s.size() > max_probe_)
    throw OutOfReach(src.name() + " element " + e.to_string() + " has support of size " + std::to_string(s.size()) +
                     " beyond the probe family");
  auto probe = probe_set(s.size());
  if (s == probe) {
    if (auto r = component(s.size(), e)) return *r;
    throw OutOfReach("no component entry for " + e.to_string());
  }
  auto key = src.fmap([&](const Element& x) { return probe[*s.index_of(x)]; }, e);
  auto r = component(s.size(), key);
  if (!r) throw OutOfReach("no component entry for " + key.to_string());
  return target().fmap([&](const Element& y) { return s[*probe.index_of(y)]; }, *r);
}

ElementMap NatTrans::as_map() const {
  return [self = *this](const Element& e) { return self(e); };
}

std::string NatTrans::to_string() const {
  std::string s = source().name() + " => " + target().name() + "\n";
  for (std::size_t n = 0; n <= max_probe_; ++n) {
    s += "  [" + std::to_string(n) + "]";
    for (const auto& [k, v] : entries(n)) s += " " + k.to_string() + "->" + v.to_string();
    s += "\n";
  }
  return s;
}

bool same_components(const NatTrans& a, const NatTrans& b) {
  if (a.m()->name() != b.m()->name() || a.t()->name() != b.t()->name() || a.max_probe() != b.max_probe() ||
      !(a.bound() == b.bound()))
    return false;
  for (std::size_t n = 0; n <= a.max_probe(); ++n)
    if (a.entries(n) != b.entries(n)) return false;
  return true;
}

Report check_naturality(const NatTrans& lambda) {
  Report r;
  r.law = "naturality of " + lambda.source().name() + " => " + lambda.target().name();
  auto src = lambda.source();
  auto tgt = lambda.target();
  for (std::size_t i = 0; i <= lambda.max_probe() && r.pass; ++i) {
    auto dom = probe_set(i);
    auto inputs = src.enumerate(dom, lambda.bound());
    for (std::size_t j = 0; j <= lambda.max_probe() && r.pass; ++j) {
      for (const auto& f : all_functions(dom, probe_set(j))) {
        auto fm = f.as_map();
        auto part = check_paths(
            r.law, inputs,
            [&](const Element& e) {
              auto moved = src.fmap(fm, e);
              auto v = lambda.component(j, moved);
              if (!v) throw InvariantViolation("component " + std::to_string(j) + " misses " + moved.to_string());
              return *v;
            },
            [&](const Element& e) { return tgt.fmap(fm, *lambda.component(i, e)); }, "f=" + f.to_string());
        absorb(r, part);
        if (!r.pass) break;
      }
    }
  }
  return r;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Strong: return "strong";
    case Verdict::WeakOnly: return "weak-only";
    case Verdict::Neither: return "neither";
  }
  return "?";
}

Report LawClassification::summary() const {
  auto r = Report::all_of("distributive law diagrams", {unit_m, unit_t, mult_m, mult_t});
  r.pass = verdict != Verdict::Neither;
  r.note = "verdict: " + to_string(verdict);
  return r;
}

LawClassification classify_law(const NatTrans& lambda) {
  auto nat = check_naturality(lambda);
  if (!nat.pass) throw ValidityError("not natural:\n" + nat.render());
  const auto& m = *lambda.m();
  const auto& t = *lambda.t();
  const auto& b = lambda.bound();
  auto lam = lambda.as_map();
  LawClassification c;
  c.unit_m.law = "lambda . eta^M T = T eta^M";
  c.unit_t.law = "lambda . M eta^T = eta^T M";
  c.mult_m.law = "lambda . mu^M T = T mu^M . lambda M . M lambda";
  c.mult_t.law = "lambda . M mu^T = mu^T M . T lambda . lambda T";
  Composite mt{lambda.m(), lambda.t()};
  for (std::size_t n = 0; n <= lambda.max_probe(); ++n) {
    auto x = probe_set(n);
    auto ctx = "X=" + x.to_string();
    absorb(c.unit_m,
           check_paths(
               c.unit_m.law, t.enumerate(x, b), [&](const Element& e) { return lambda(m.unit(e)); },
               [&](const Element& e) { return t.fmap([&](const Element& y) { return m.unit(y); }, e); }, ctx));
    absorb(c.unit_t,
           check_paths(
               c.unit_t.law, m.enumerate(x, b),
               [&](const Element& e) { return lambda(m.fmap([&](const Element& y) { return t.unit(y); }, e)); },
               [&](const Element& e) { return t.unit(e); }, ctx));
    auto mmt = m.enumerate(FinSet::of_unique(mt.enumerate(x, b)), b);
    absorb(c.mult_m,
           check_paths(
               c.mult_m.law, mmt, [&](const Element& e) { return lambda(m.mult(e)); },
               [&](const Element& e) {
                 return t.fmap([&](const Element& y) { return m.mult(y); }, lambda(m.fmap(lam, e)));
               },
               ctx));
    auto tx = FinSet::of_unique(t.enumerate(x, b));
    auto mtt = m.enumerate(FinSet::of_unique(t.enumerate(tx, b)), b);
    absorb(c.mult_t,
           check_paths(
               c.mult_t.law, mtt,
               [&](const Element& e) { return lambda(m.fmap([&](const Element& y) { return t.mult(y); }, e)); },
               [&](const Element& e) { return t.mult(t.fmap(lam, lambda(e))); }, ctx));
  }
  bool weak = c.unit_t.pass && c.mult_m.pass && c.mult_t.pass;
  c.verdict = weak ? (c.unit_m.pass ? Verdict::Strong : Verdict::WeakOnly) : Verdict::Neither;
  return c;
}

Lifting::Lifting(MonadPtr m, MonadPtr t, Bound b, Action act)
    : m_(std::move(m)), t_(std::move(t)), bound_(b), act_(std::move(act)) {}

Semialgebra Lifting::operator()(const Semialgebra& a) const {
  auto out = act_(a);
  auto expected = t_->apply(a.carrier(), bound_);
  if (!(out.carrier() == expected))
    throw InvariantViolation("lifted structure on " + out.carrier().to_string() + " is not carried by " +
                             t_->name() + a.carrier().to_string());
  return out;
}

std::vector<Semialgebra> semialgebra_family(const Monad& m, std::size_t max_size, const Bound& b) {
  std::vector<Semialgebra> out;
  for (std::size_t n = 0; n <= max_size; ++n)
    for (auto& s : enumerate_semialgebras(m, probe_set(n), b)) out.push_back(std::move(s));
  return out;
}

Lifting lifting_from_transformation(const NatTrans& lambda) {
  auto t = lambda.t();
  auto b = lambda.bound();
  return Lifting(lambda.m(), t, b, [lambda, t, b](const Semialgebra& a) {
    return Semialgebra::from_callback(t->apply(a.carrier(), b),
                                      [lambda, t, am = a.as_map()](const Element& e) { return t->fmap(am, lambda(e)); });
  });
}

Lifting law_to_lifting(const NatTrans& lambda) {
  auto c = classify_law(lambda);
  if (c.verdict == Verdict::Neither) throw ValidityError("not a weak distributive law:\n" + c.summary().render());
  return lifting_from_transformation(lambda);
}

NatTrans lifting_to_law(const Lifting& lift, std::size_t max_probe) {
  const auto& m = *lift.m();
  const auto& t = *lift.t();
  Composite mt{lift.m(), lift.t()};
  auto t_eta = [&](const Element& tx) { return t.fmap([&](const Element& x) { return m.unit(x); }, tx); };
  std::vector<NatTrans::Component> comps(max_probe + 1);
  for (std::size_t n = 0; n <= max_probe; ++n) {
    auto x = probe_set(n);
    auto lifted_free = lift(free_semialgebra(lift.m(), x, lift.bound()));
    for (const auto& e : mt.enumerate(x, lift.bound())) comps[n].emplace(e, lifted_free(m.fmap(t_eta, e)));
  }
  return NatTrans(lift.m(), lift.t(), max_probe, lift.bound(), std::move(comps));
}

bool liftings_agree(const Lifting& a, const Lifting& b, const std::vector<Semialgebra>& family) {
  for (const auto& s : family) {
    auto x = a(s), y = b(s);
    if (!(x.carrier() == y.carrier())) return false;
    for (const auto& e : a.m()->enumerate(x.carrier(), a.bound()))
      if (!(x(e) == y(e))) return false;
  }
  return true;
}

Report check_lifting_condition6(const Lifting& lift, const std::vector<Semialgebra>& family) {
  const auto& m = *lift.m();
  Composite mt{lift.m(), lift.t()};
  Report r;
  r.law = "T~a = T~a . MTa . MT eta";
  for (const auto& a : family) {
    auto lifted = lift(a);
    auto abar = [&](const Element& x) { return a(m.unit(x)); };
    auto mt_abar = [&](const Element& e) { return mt.fmap(abar, e); };
    absorb(r, check_paths(
                  r.law, mt.enumerate(a.carrier(), lift.bound()), [&](const Element& e) { return lifted(e); },
                  [&](const Element& e) { return lifted(mt_abar(e)); }, "a on " + a.carrier().to_string()));
    if (!r.pass) break;
  }
  return r;
}

namespace {

std::string describe(const Monad& m, const Semialgebra& a, const Bound& b) {
  std::string s = a.carrier().to_string() + " ";
  for (const auto& e : m.enumerate(a.carrier(), b)) {
    try {
      s += e.to_string() + "->" + a(e).to_string() + " ";
    } catch (const OutOfReach&) {
    }
  }
  return s;
}

}  // namespace

Report verify_lifting(const Lifting& lift, const std::vector<Semialgebra>& family) {
  const auto& m = *lift.m();
  const auto& t = *lift.t();
  const auto& b = lift.bound();
  Report semi, unit, mult, functorial;
  semi.law = "T~a is a semialgebra";
  unit.law = "eta^T : a -> T~a is a homomorphism";
  mult.law = "mu^T : T~T~a -> T~a is a homomorphism";
  functorial.law = "Tf : T~a -> T~b is a homomorphism for f : a -> b";
  std::vector<Semialgebra> lifted;
  lifted.reserve(family.size());
  for (const auto& a : family) {
    auto ctx = describe(m, a, b);
    auto la = lift(a);
    auto part = check_semialgebra(m, la, b);
    if (part.counterexample) part.counterexample->context = ctx;
    absorb(semi, part);
    auto tx = la.carrier();
    auto eta = FinFunction::tabulate(a.carrier(), tx, [&](const Element& x) { return t.unit(x); });
    part = check_homomorphism(m, a, la, eta, b);
    if (part.counterexample) part.counterexample->context = ctx;
    absorb(unit, part);
    auto lla = lift(la);
    auto mu = FinFunction::tabulate(lla.carrier(), tx, [&](const Element& y) { return t.mult(y); });
    part = check_homomorphism(m, lla, la, mu, b);
    if (part.counterexample) part.counterexample->context = ctx;
    absorb(mult, part);
    lifted.push_back(std::move(la));
  }
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = 0; j < family.size(); ++j)
      for (const auto& f : all_functions(family[i].carrier(), family[j].carrier())) {
        if (!check_homomorphism(m, family[i], family[j], f, b).pass) continue;
        auto fm = f.as_map();
        auto tf = FinFunction::tabulate(lifted[i].carrier(), lifted[j].carrier(),
                                        [&](const Element& y) { return t.fmap(fm, y); });
        auto part = check_homomorphism(m, lifted[i], lifted[j], tf, b);
        if (part.counterexample) part.counterexample->context = "f=" + f.to_string() + " from " +
                                                                describe(m, family[i], b);
        absorb(functorial, part);
      }
  return Report::all_of("lifting of " + t.name() + " to " + m.name() + "-semialgebras",
                        {std::move(semi), std::move(unit), std::move(mult), std::move(functorial)});
}

std::optional<Condition6Witness> find_condition6_violation(const NatTrans& lambda,
                                                           const std::vector<Semialgebra>& family) {
  auto base = lifting_from_transformation(lambda);
  const auto& m = *lambda.m();
  const auto& b = lambda.bound();
  std::optional<Condition6Witness> fallback;
  for (const auto& alpha : family) {
    if (check_algebra(m, alpha, b).pass) continue;
    auto ta = lambda.t()->apply(alpha.carrier(), b);
    for (const auto& beta : enumerate_semialgebras(m, ta, b)) {
      Lifting patched(lambda.m(), lambda.t(), b, [base, alpha, beta, mp = lambda.m(), b](const Semialgebra& a) {
        return same_structure(*mp, a, alpha, b) ? beta : base(a);
      });
      if (check_lifting_condition6(patched, {alpha}).pass) continue;
      if (verify_lifting(patched, family).pass) return Condition6Witness{patched, alpha, true};
      if (!fallback) fallback = Condition6Witness{patched, alpha, false};
    }
  }
  return fallback;
}

NatTrans weak_to_strong(const NatTrans& lambda) {
  auto c = classify_law(lambda);
  if (c.verdict == Verdict::Neither) throw ValidityError("not a weak distributive law:\n" + c.summary().render());
  auto ms = semifree_of(lambda.m());
  const auto& m = *lambda.m();
  const auto& t = *lambda.t();
  auto mu_bar = [ms](const Element& e) { return ms->mult(inr(e)); };
  auto t_inl = [&](const Element& tx) { return t.fmap(inl, tx); };
  auto delta = [&](const Element& e) -> Element {
    if (e.is(Kind::L)) return t_inl(e.inner());
    return t.fmap(mu_bar, lambda(m.fmap(t_inl, e.inner())));
  };
  return NatTrans::tabulate(ms, lambda.t(), lambda.max_probe(), lambda.bound(), delta);
}

namespace {

const SemifreeMonad& semifree_source(const NatTrans& delta) {
  const auto* ms = dynamic_cast<const SemifreeMonad*>(delta.m().get());
  if (!ms) throw InvariantViolation(delta.m()->name() + " is not a semifree monad");
  return *ms;
}

}  // namespace

Report check_condition7(const NatTrans& delta) {
  const auto& ms = semifree_source(delta);
  const auto& m = *ms.base();
  const auto& t = *delta.t();
  auto fix = copair([&](const Element& x) { return inr(m.unit(x)); }, [](const Element& mx) { return inr(mx); });
  Composite mt{ms.base(), delta.t()};
  Report r;
  r.law = "delta . inr = T[inr . eta, inr] . delta . inr";
  for (std::size_t n = 0; n <= delta.max_probe(); ++n) {
    std::vector<Element> inputs;
    for (const auto& e : mt.enumerate(probe_set(n), delta.bound())) inputs.push_back(inr(e));
    absorb(r, check_paths(
                  r.law, inputs, [&](const Element& e) { return delta(e); },
                  [&](const Element& e) { return t.fmap(fix, delta(e)); }, "X=" + probe_set(n).to_string()));
  }
  return r;
}

Report check_condition8(const NatTrans& delta) {
  const auto& ms = semifree_source(delta);
  const auto& m = *ms.base();
  const auto& t = *delta.t();
  auto fix = copair([&](const Element& x) { return inr(m.unit(x)); }, [](const Element& mx) { return inr(mx); });
  auto delta_r = [&](const Element& e) { return delta(inr(e)); };
  Composite mt{ms.base(), delta.t()};
  Report r;
  r.law = "delta^r = T[inr . eta, inr] . delta^r";
  for (std::size_t n = 0; n <= delta.max_probe(); ++n)
    absorb(r, check_paths(
                  r.law, mt.enumerate(probe_set(n), delta.bound()), delta_r,
                  [&](const Element& e) { return t.fmap(fix, delta_r(e)); }, "X=" + probe_set(n).to_string()));
  return r;
}

NatTrans strong_to_weak(const NatTrans& delta) {
  const auto& ms = semifree_source(delta);
  auto c7 = check_condition7(delta);
  if (!c7.pass) throw ValidityError("the inr condition fails:\n" + c7.render());
  auto t = delta.t();
  auto b = delta.bound();
  Lifting lift(ms.base(), t, b, [delta, t, b](const Semialgebra& a) {
    auto id_a = copair([](const Element& x) { return x; }, a.as_map());
    return Semialgebra::from_callback(t->apply(a.carrier(), b), [delta, t, id_a](const Element& e) {
      return t->fmap(id_a, delta(inr(e)));
    });
  });
  auto c6 = check_lifting_condition6(lift, semialgebra_family(*ms.base(), delta.max_probe(), b));
  if (!c6.pass) throw ValidityError("induced lifting violates the stability condition:\n" + c6.render());
  return lifting_to_law(lift, delta.max_probe());
}

NatTrans canonical_maybe_law(const MonadPtr& t, std::size_t max_probe, const Bound& b) {
  return NatTrans::tabulate(builtin("maybe"), t, max_probe, b, [t](const Element& e) {
    if (e.is(Kind::Just)) return t->fmap([](const Element& x) { return Element::just(x); }, e.inner());
    return t->unit(Element::nothing());
  });
}

}  // namespace semifree
