#include "semifree/monad.hpp"

#include "semifree/errors.hpp"

#include <unordered_map>

namespace semifree {

void Bound::validate() const {
  if (max_word_len < 1) throw InvariantViolation("max_word_len must be >= 1");
  if (max_denominator < 1) throw InvariantViolation("max_denominator must be >= 1");
  if (max_subset_size < 0) throw InvariantViolation("max_subset_size must be >= 0");
}

FinSet Monad::apply(const FinSet& x, const Bound& b) const { return FinSet::of_unique(enumerate(x, b)); }

namespace {

[[noreturn]] void bad_shape(const std::string& monad, const Element& e) {
  throw InvariantViolation(monad + ": " + e.to_string() + " is not an element of the expected shape");
}

class Maybe final : public Monad {
public:
  std::string name() const override { return "maybe"; }
  Element unit(const Element& x) const override { return Element::just(x); }
  Element mult(const Element& mm) const override {
    if (mm.is(Kind::Nothing)) return mm;
    if (!mm.is(Kind::Just)) bad_shape(name(), mm);
    const auto& m = mm.inner();
    if (!m.is(Kind::Just) && !m.is(Kind::Nothing)) bad_shape(name(), mm);
    return m;
  }
  Element fmap(const ElementMap& f, const Element& m) const override {
    if (m.is(Kind::Nothing)) return m;
    if (!m.is(Kind::Just)) bad_shape(name(), m);
    return Element::just(f(m.inner()));
  }
  std::vector<Element> enumerate(const FinSet& x, const Bound&) const override {
    std::vector<Element> out;
    out.reserve(x.size() + 1);
    for (const auto& e : x) out.push_back(Element::just(e));
    out.push_back(Element::nothing());
    return out;
  }
  bool finite_under(const Bound&) const override { return true; }
};

class NonEmptyList final : public Monad {
public:
  std::string name() const override { return "nelist"; }
  Element unit(const Element& x) const override { return Element::word({x}); }
  Element mult(const Element& ww) const override {
    if (!ww.is(Kind::Word)) bad_shape(name(), ww);
    std::vector<Element> flat;
    for (const auto& w : ww.children()) {
      if (!w.is(Kind::Word)) bad_shape(name(), ww);
      flat.insert(flat.end(), w.children().begin(), w.children().end());
    }
    return Element::word(std::move(flat));
  }
  Element fmap(const ElementMap& f, const Element& w) const override {
    if (!w.is(Kind::Word)) bad_shape(name(), w);
    std::vector<Element> out;
    out.reserve(w.children().size());
    for (const auto& x : w.children()) out.push_back(f(x));
    return Element::word(std::move(out));
  }
  std::vector<Element> enumerate(const FinSet& x, const Bound& b) const override {
    b.validate();
    std::vector<Element> out;
    if (x.empty()) return out;
    for (int len = 1; len <= b.max_word_len; ++len) {
      std::vector<std::size_t> digits(static_cast<std::size_t>(len), 0);
      while (true) {
        std::vector<Element> letters;
        letters.reserve(digits.size());
        for (auto d : digits) letters.push_back(x[d]);
        out.push_back(Element::word(std::move(letters)));
        // Odometer with the last letter varying fastest: lexicographic order.
        std::size_t i = digits.size();
        while (i > 0 && ++digits[i - 1] == x.size()) digits[--i] = 0;
        if (i == 0) break;
      }
    }
    return out;
  }
  bool finite_under(const Bound&) const override { return false; }
};

class Powerset final : public Monad {
public:
  std::string name() const override { return "powerset"; }
  Element unit(const Element& x) const override { return Element::subset({x}); }
  Element mult(const Element& ss) const override {
    if (!ss.is(Kind::SubSet)) bad_shape(name(), ss);
    std::vector<Element> all;
    for (const auto& s : ss.children()) {
      if (!s.is(Kind::SubSet)) bad_shape(name(), ss);
      all.insert(all.end(), s.children().begin(), s.children().end());
    }
    return Element::subset(std::move(all));
  }
  Element fmap(const ElementMap& f, const Element& s) const override {
    if (!s.is(Kind::SubSet)) bad_shape(name(), s);
    std::vector<Element> out;
    out.reserve(s.children().size());
    for (const auto& x : s.children()) out.push_back(f(x));
    return Element::subset(std::move(out));
  }
  std::vector<Element> enumerate(const FinSet& x, const Bound& b) const override {
    b.validate();
    std::size_t cap = b.max_subset_size == 0 ? x.size() : std::min<std::size_t>(x.size(), b.max_subset_size);
    std::vector<Element> out;
    for (std::size_t k = 0; k <= cap; ++k) {
      std::vector<std::size_t> pick(k);
      for (std::size_t i = 0; i < k; ++i) pick[i] = i;
      while (true) {
        std::vector<Element> members;
        members.reserve(k);
        for (auto i : pick) members.push_back(x[i]);
        out.push_back(Element::subset(std::move(members)));
        // next k-combination in lexicographic order
        std::size_t i = k;
        while (i > 0 && pick[i - 1] == x.size() - k + i - 1) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
      }
    }
    return out;
  }
  bool finite_under(const Bound& b) const override { return b.max_subset_size == 0; }
};

class Distribution final : public Monad {
public:
  std::string name() const override { return "dist"; }
  Element unit(const Element& x) const override { return Element::dist({{x, Rational(1)}}); }
  Element mult(const Element& dd) const override {
    if (!dd.is(Kind::Dist)) bad_shape(name(), dd);
    std::vector<std::pair<Element, Rational>> acc;
    auto inner = dd.children();
    auto outer_w = dd.weights();
    for (std::size_t i = 0; i < inner.size(); ++i) {
      if (!inner[i].is(Kind::Dist)) bad_shape(name(), dd);
      auto xs = inner[i].children();
      auto ws = inner[i].weights();
      for (std::size_t j = 0; j < xs.size(); ++j) acc.emplace_back(xs[j], outer_w[i] * ws[j]);
    }
    return Element::dist(std::move(acc));
  }
  Element fmap(const ElementMap& f, const Element& d) const override {
    if (!d.is(Kind::Dist)) bad_shape(name(), d);
    std::vector<std::pair<Element, Rational>> out;
    auto xs = d.children();
    auto ws = d.weights();
    out.reserve(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) out.emplace_back(f(xs[i]), ws[i]);
    return Element::dist(std::move(out));
  }
  std::vector<Element> enumerate(const FinSet& x, const Bound& b) const override {
    b.validate();
    std::vector<Element> out;
    if (x.empty()) return out;
    const int n = b.max_denominator;
    // compositions of n into |X| non-negative parts, first part largest-first
    std::vector<int> parts(x.size(), 0);
    auto emit = [&] {
      std::vector<std::pair<Element, Rational>> ws;
      for (std::size_t i = 0; i < parts.size(); ++i)
        if (parts[i]) ws.emplace_back(x[i], Rational(parts[i], n));
      out.push_back(Element::dist(std::move(ws)));
    };
    auto rec = [&](auto&& self, std::size_t i, int left) -> void {
      if (i + 1 == parts.size()) {
        parts[i] = left;
        emit();
        return;
      }
      for (int k = left; k >= 0; --k) {
        parts[i] = k;
        self(self, i + 1, left - k);
      }
    };
    rec(rec, 0, n);
    return out;
  }
  bool finite_under(const Bound&) const override { return false; }
};

}  // namespace

MonadPtr builtin(const std::string& name) {
  static const MonadPtr maybe = std::make_shared<Maybe>();
  static const MonadPtr nelist = std::make_shared<NonEmptyList>();
  static const MonadPtr powerset = std::make_shared<Powerset>();
  static const MonadPtr dist = std::make_shared<Distribution>();
  if (name == "maybe") return maybe;
  if (name == "nelist") return nelist;
  if (name == "powerset") return powerset;
  if (name == "dist") return dist;
  throw UnknownMonad("unknown monad '" + name + "'");
}

std::vector<Element> enumerate_elements(const Monad& m, const FinSet& x, const Bound& b) {
  return m.enumerate(x, b);
}

std::vector<Element> enumerate_tower(const Monad& m, const FinSet& x, int depth, const Bound& inner,
                                     const std::optional<Bound>& nested) {
  if (depth < 1) throw InvariantViolation("tower depth must be >= 1");
  auto layer = m.enumerate(x, inner);
  for (int d = 1; d < depth; ++d) layer = m.enumerate(FinSet::of_unique(std::move(layer)), nested.value_or(inner));
  return layer;
}

struct Semialgebra::Table {
  std::unordered_map<Element, Element, ElementHash> entries;
};

Semialgebra Semialgebra::from_table(FinSet carrier, const std::vector<std::pair<Element, Element>>& table) {
  auto t = std::make_shared<Table>();
  for (const auto& [k, v] : table) {
    if (!carrier.contains(v))
      throw InvariantViolation("semialgebra value " + v.to_string() + " outside carrier " + carrier.to_string());
    if (!t->entries.emplace(k, v).second)
      throw InvariantViolation("duplicate semialgebra table entry " + k.to_string());
  }
  Semialgebra s;
  s.carrier_ = std::move(carrier);
  s.table_ = std::move(t);
  return s;
}

Semialgebra Semialgebra::from_callback(FinSet carrier, ElementMap eval) {
  Semialgebra s;
  s.carrier_ = std::move(carrier);
  s.eval_ = std::move(eval);
  return s;
}

Element Semialgebra::operator()(const Element& m) const {
  if (table_) {
    auto it = table_->entries.find(m);
    if (it == table_->entries.end()) throw OutOfReach("no table entry for " + m.to_string());
    return it->second;
  }
  return eval_(m);
}

ElementMap Semialgebra::as_map() const {
  return [self = *this](const Element& m) { return self(m); };
}

std::vector<std::pair<Element, Element>> Semialgebra::table() const {
  std::vector<std::pair<Element, Element>> out;
  if (!table_) return out;
  out.assign(table_->entries.begin(), table_->entries.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

FinFunction unit_restriction(const Monad& m, const Semialgebra& a) {
  return FinFunction::tabulate(a.carrier(), a.carrier(), [&](const Element& x) { return a(m.unit(x)); });
}

Report check_monad_laws(const Monad& m, const FinSet& x, const Bound& b, const std::optional<Bound>& nested) {
  auto mx = m.enumerate(x, b);
  auto id = [](const Element& e) { return e; };
  auto unit_left = check_paths(
      "mu . M(eta) = id", mx,
      [&](const Element& e) { return m.mult(m.fmap([&](const Element& y) { return m.unit(y); }, e)); }, id);
  auto unit_right =
      check_paths("mu . eta(M) = id", mx, [&](const Element& e) { return m.mult(m.unit(e)); }, id);
  auto mmmx = enumerate_tower(m, x, 3, b, nested);
  auto assoc = check_paths(
      "mu . M(mu) = mu . mu(M)", mmmx,
      [&](const Element& e) { return m.mult(m.fmap([&](const Element& y) { return m.mult(y); }, e)); },
      [&](const Element& e) { return m.mult(m.mult(e)); });
  auto r = Report::all_of("monad laws for " + m.name() + " on " + x.to_string(),
                          {std::move(unit_left), std::move(unit_right), std::move(assoc)});
  return r;
}

Report check_functor_laws(const Monad& m, const FinSet& x, const FinSet& y, const FinSet& z, const Bound& b) {
  auto mx = m.enumerate(x, b);
  auto ident = check_paths(
      "fmap(id) = id", mx, [&](const Element& e) { return m.fmap([](const Element& v) { return v; }, e); },
      [](const Element& e) { return e; });
  Report comp;
  comp.law = "fmap(g . f) = fmap(g) . fmap(f)";
  for (const auto& f : all_functions(x, y)) {
    for (const auto& g : all_functions(y, z)) {
      auto gf = compose(g, f);
      auto part = check_paths(
          comp.law, mx, [&](const Element& e) { return m.fmap(gf.as_map(), e); },
          [&](const Element& e) { return m.fmap(g.as_map(), m.fmap(f.as_map(), e)); },
          "f=" + f.to_string() + " g=" + g.to_string());
      absorb(comp, part);
      if (!comp.pass) break;
    }
    if (!comp.pass) break;
  }
  return Report::all_of("functor laws for " + m.name(), {std::move(ident), std::move(comp)});
}

Report check_unit_mult_naturality(const Monad& m, const FinSet& x, const FinSet& y, const Bound& b) {
  Report unit_nat;
  unit_nat.law = "Mf . eta = eta . f";
  Report mult_nat;
  mult_nat.law = "Mf . mu = mu . MMf";
  auto mmx = enumerate_tower(m, x, 2, b);
  for (const auto& f : all_functions(x, y)) {
    auto ctx = "f=" + f.to_string();
    absorb(unit_nat, check_paths(
                         unit_nat.law, x.elements(), [&](const Element& e) { return m.fmap(f.as_map(), m.unit(e)); },
                         [&](const Element& e) { return m.unit(f(e)); }, ctx));
    auto mf = [&](const Element& e) { return m.fmap(f.as_map(), e); };
    absorb(mult_nat,
           check_paths(
               mult_nat.law, mmx, [&](const Element& e) { return m.fmap(f.as_map(), m.mult(e)); },
               [&](const Element& e) { return m.mult(m.fmap(mf, e)); }, ctx));
  }
  return Report::all_of("naturality of unit and mult for " + m.name(), {std::move(unit_nat), std::move(mult_nat)});
}

Report check_semialgebra(const Monad& m, const Semialgebra& a, const Bound& b) {
  auto mx = m.enumerate(a.carrier(), b);
  Report images;
  images.law = "a lands in the carrier";
  for (const auto& e : mx) {
    try {
      auto v = a(e);
      ++images.checked;
      if (!a.carrier().contains(v)) {
        images.fail({"", e.to_string(), v.to_string(), "outside " + a.carrier().to_string()});
        break;
      }
    } catch (const OutOfReach&) {
      ++images.skipped;
    }
  }
  auto mmx = enumerate_tower(m, a.carrier(), 2, b);
  auto am = a.as_map();
  auto assoc = check_paths(
      "a . Ma = a . mu", mmx, [&](const Element& e) { return a(m.fmap(am, e)); },
      [&](const Element& e) { return a(m.mult(e)); });
  return Report::all_of(m.name() + "-semialgebra", {std::move(images), std::move(assoc)});
}

Report check_algebra(const Monad& m, const Semialgebra& a, const Bound& b) {
  auto semi = check_semialgebra(m, a, b);
  auto unit = check_paths(
      "a . eta = id", a.carrier().elements(), [&](const Element& x) { return a(m.unit(x)); },
      [](const Element& x) { return x; });
  return Report::all_of(m.name() + "-algebra", {std::move(semi), std::move(unit)});
}

Report check_homomorphism(const Monad& m, const Semialgebra& a, const Semialgebra& b, const FinFunction& f,
                          const Bound& bnd) {
  if (!(f.dom() == a.carrier()) || !(f.cod() == b.carrier()))
    throw DomainMismatch("homomorphism " + f.to_string() + " does not run " + a.carrier().to_string() + " -> " +
                         b.carrier().to_string());
  auto mx = m.enumerate(a.carrier(), bnd);
  return check_paths(
      "f . a = b . Mf", mx, [&](const Element& e) { return f(a(e)); },
      [&](const Element& e) { return b(m.fmap(f.as_map(), e)); }, f.to_string());
}

std::vector<Semialgebra> all_structures(const Monad& m, const FinSet& carrier, const Bound& b) {
  auto dom = m.enumerate(carrier, b);
  std::vector<Semialgebra> out;
  if (carrier.empty() && !dom.empty()) return out;
  double count = 1;
  for (std::size_t i = 0; i < dom.size(); ++i) count *= static_cast<double>(carrier.size());
  if (count > 1 << 22)
    throw InvariantViolation("too many candidate structures on " + carrier.to_string() + " (" +
                             std::to_string(count) + ")");
  for (const auto& f : all_functions(FinSet::of_unique(dom), carrier)) {
    std::vector<std::pair<Element, Element>> table;
    table.reserve(dom.size());
    for (std::size_t i = 0; i < f.dom().size(); ++i) table.emplace_back(f.dom()[i], f.images()[i]);
    out.push_back(Semialgebra::from_table(carrier, table));
  }
  return out;
}

std::vector<Semialgebra> enumerate_semialgebras(const Monad& m, const FinSet& carrier, const Bound& b) {
  std::vector<Semialgebra> out;
  for (auto& s : all_structures(m, carrier, b))
    if (check_semialgebra(m, s, b).pass) out.push_back(std::move(s));
  return out;
}

bool same_structure(const Monad& m, const Semialgebra& a, const Semialgebra& b, const Bound& bnd) {
  if (!(a.carrier() == b.carrier())) return false;
  for (const auto& e : m.enumerate(a.carrier(), bnd)) {
    std::optional<Element> x, y;
    try {
      x = a(e);
    } catch (const OutOfReach&) {
    }
    try {
      y = b(e);
    } catch (const OutOfReach&) {
    }
    if (x != y) return false;
  }
  return true;
}

Semialgebra free_semialgebra(const MonadPtr& m, const FinSet& x, const Bound& b) {
  if (!m->finite_under(b)) throw InvariantViolation("free semialgebra needs a finite enumeration of " + m->name());
  return Semialgebra::from_callback(m->apply(x, b), [m](const Element& e) { return m->mult(e); });
}

}  // namespace semifree
