#include "semifree/semifree.hpp"

#include "semifree/errors.hpp"

namespace semifree {

SemifreeMonad::SemifreeMonad(MonadPtr base) : base_(std::move(base)) {
  if (!base_) throw InvariantViolation("semifree monad needs a base monad");
}

std::string SemifreeMonad::name() const { return base_->name() + "-semifree"; }

Element SemifreeMonad::unit(const Element& x) const { return inl(x); }

Element SemifreeMonad::mult(const Element& e) const {
  if (e.is(Kind::L)) return e.inner();
  if (!e.is(Kind::R)) throw InvariantViolation(name() + ": " + e.to_string() + " is not tagged");
  const auto& b = *base_;
  auto eta_id = copair([&b](const Element& x) { return b.unit(x); }, [](const Element& m) { return m; });
  return inr(b.mult(b.fmap(eta_id, e.inner())));
}

Element SemifreeMonad::fmap(const ElementMap& f, const Element& e) const {
  if (e.is(Kind::L)) return inl(f(e.inner()));
  if (e.is(Kind::R)) return inr(base_->fmap(f, e.inner()));
  throw InvariantViolation(name() + ": " + e.to_string() + " is not tagged");
}

std::vector<Element> SemifreeMonad::enumerate(const FinSet& x, const Bound& b) const {
  std::vector<Element> out;
  for (const auto& e : x) out.push_back(inl(e));
  for (const auto& m : base_->enumerate(x, b)) out.push_back(inr(m));
  return out;
}

bool SemifreeMonad::finite_under(const Bound& b) const { return base_->finite_under(b); }

std::shared_ptr<const SemifreeMonad> semifree_of(MonadPtr base) {
  return std::make_shared<SemifreeMonad>(std::move(base));
}

MonadPtr monad_by_name(const std::string& name) {
  static const std::string suffix = "-semifree";
  if (name.size() > suffix.size() && name.ends_with(suffix))
    return semifree_of(builtin(name.substr(0, name.size() - suffix.size())));
  return builtin(name);
}

MsAlgebra to_ms_algebra(const MonadPtr& m, const Semialgebra& a, const Bound& b) {
  auto r = check_semialgebra(*m, a, b);
  if (!r.pass) throw ValidityError("not a semialgebra:\n" + r.render());
  if (a.table_backed()) {
    std::vector<std::pair<Element, Element>> table;
    for (const auto& x : a.carrier()) table.emplace_back(inl(x), x);
    for (const auto& [k, v] : a.table()) table.emplace_back(inr(k), v);
    return Semialgebra::from_table(a.carrier(), table);
  }
  return Semialgebra::from_callback(a.carrier(), copair([](const Element& x) { return x; }, a.as_map()));
}

Semialgebra from_ms_algebra(const MonadPtr& m, const MsAlgebra& alpha, const Bound& b) {
  SemifreeMonad ms(m);
  auto r = check_algebra(ms, alpha, b);
  if (!r.pass) throw ValidityError("not an algebra for " + ms.name() + ":\n" + r.render());
  if (alpha.table_backed()) {
    std::vector<std::pair<Element, Element>> table;
    for (const auto& [k, v] : alpha.table())
      if (k.is(Kind::R)) table.emplace_back(k.inner(), v);
    return Semialgebra::from_table(alpha.carrier(), table);
  }
  return Semialgebra::from_callback(alpha.carrier(), [alpha](const Element& mx) { return alpha(inr(mx)); });
}

Report check_eq13(const Monad& m, const Semialgebra& a, const Bound& b) {
  std::vector<Element> sum;
  for (const auto& x : a.carrier()) sum.push_back(inl(x));
  for (const auto& mx : m.enumerate(a.carrier(), b)) sum.push_back(inr(mx));
  auto inputs = m.enumerate(FinSet(std::move(sum)), b);
  auto id_a = copair([](const Element& x) { return x; }, a.as_map());
  auto eta_id = copair([&m](const Element& x) { return m.unit(x); }, [](const Element& mx) { return mx; });
  return check_paths(
      "a . M[id, a] = a . mu . M[eta, id]", inputs, [&](const Element& e) { return a(m.fmap(id_a, e)); },
      [&](const Element& e) { return a(m.mult(m.fmap(eta_id, e))); });
}

FinFunction idempotent_of(const Monad& m, const Semialgebra& a, const Bound& b) {
  auto r = check_semialgebra(m, a, b);
  if (!r.pass) throw ValidityError("not a semialgebra:\n" + r.render());
  auto abar = unit_restriction(m, a);
  if (!(compose(abar, abar) == abar))
    throw InvariantViolation("a . eta is not idempotent: " + abar.to_string());
  auto hom = check_homomorphism(m, a, a, abar, b);
  if (!hom.pass) throw InvariantViolation("a . eta is not an endomorphism of a:\n" + hom.render());
  return abar;
}

Report check_monad_morphism_eta_id(const MonadPtr& m, std::size_t max_size, const Bound& b,
                                   const std::optional<Bound>& nested) {
  SemifreeMonad ms(m);
  const auto& base = *m;
  // [eta, id] is parametric in its carrier, so one transformer serves MsX and MsMsX.
  auto phi = copair([&base](const Element& x) { return base.unit(x); }, [](const Element& mx) { return mx; });
  std::vector<Report> parts;
  for (std::size_t n = 0; n <= max_size; ++n) {
    auto x = probe_set(n);
    auto ctx = "X=" + x.to_string();
    auto unit = check_paths(
        "phi . eta^s = eta", x.elements(), [&](const Element& e) { return phi(ms.unit(e)); },
        [&](const Element& e) { return base.unit(e); }, ctx);
    auto towers = enumerate_tower(ms, x, 2, b, nested);
    auto first = check_paths(
        "phi . mu^s = mu . phiM . M^s phi", towers, [&](const Element& e) { return phi(ms.mult(e)); },
        [&](const Element& e) { return base.mult(phi(ms.fmap(phi, e))); }, ctx);
    auto second = check_paths(
        "phi . mu^s = mu . M phi . phiM^s", towers, [&](const Element& e) { return phi(ms.mult(e)); },
        [&](const Element& e) { return base.mult(base.fmap(phi, phi(e))); }, ctx);
    parts.push_back(Report::all_of("on " + x.to_string(), {std::move(unit), std::move(first), std::move(second)}));
  }
  return Report::all_of("[eta, id] : " + ms.name() + " => " + base.name() + " is a monad morphism",
                        std::move(parts));
}

Report check_ms_iso(const MonadPtr& m, const FinSet& carrier, const Bound& b) {
  auto ms = semifree_of(m);
  auto semis = enumerate_semialgebras(*m, carrier, b);
  std::vector<MsAlgebra> algs;
  for (auto& s : all_structures(*ms, carrier, b))
    if (check_algebra(*ms, s, b).pass) algs.push_back(std::move(s));

  Report counts;
  counts.law = "equal counts";
  counts.checked = 1;
  if (semis.size() != algs.size())
    counts.fail({"", carrier.to_string(), std::to_string(semis.size()) + " semialgebras",
                 std::to_string(algs.size()) + " algebras"});

  Report forth, back, homs;
  forth.law = "from_ms . to_ms = id";
  back.law = "to_ms . from_ms = id";
  homs.law = "homomorphisms correspond";
  std::vector<MsAlgebra> images;
  for (const auto& a : semis) {
    ++forth.checked;
    auto alpha = to_ms_algebra(m, a, b);
    if (!same_structure(*m, from_ms_algebra(m, alpha, b), a, b)) forth.fail({"", carrier.to_string(), "", ""});
    images.push_back(std::move(alpha));
  }
  for (const auto& alpha : algs) {
    ++back.checked;
    if (!same_structure(*ms, to_ms_algebra(m, from_ms_algebra(m, alpha, b), b), alpha, b))
      back.fail({"", carrier.to_string(), "", ""});
  }
  auto fs = all_functions(carrier, carrier);
  for (std::size_t i = 0; i < semis.size() && homs.pass; ++i)
    for (std::size_t j = 0; j < semis.size() && homs.pass; ++j)
      for (const auto& f : fs) {
        ++homs.checked;
        bool lhs = check_homomorphism(*m, semis[i], semis[j], f, b).pass;
        bool rhs = check_homomorphism(*ms, images[i], images[j], f, b).pass;
        if (lhs != rhs) {
          homs.fail({"", f.to_string(), lhs ? "semialgebra hom" : "not a semialgebra hom",
                     rhs ? "algebra hom" : "not an algebra hom"});
          break;
        }
      }
  auto r = Report::all_of(ms->name() + "-algebras vs " + m->name() + "-semialgebras on " + carrier.to_string(),
                          {std::move(counts), std::move(forth), std::move(back), std::move(homs)});
  r.note = r.pass ? std::to_string(semis.size()) + " ↔ " + std::to_string(algs.size()) + " bijection"
                  : std::to_string(semis.size()) + " semialgebras, " + std::to_string(algs.size()) +
                        " algebras: no bijection";
  return r;
}

}  // namespace semifree
