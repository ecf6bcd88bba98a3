#include "semifree/finset.hpp"

#include "semifree/errors.hpp"

#include <algorithm>

namespace semifree {

FinSet::FinSet(std::vector<Element> elements) : elements_(std::move(elements)) {
  std::sort(elements_.begin(), elements_.end());
  if (std::adjacent_find(elements_.begin(), elements_.end()) != elements_.end())
    throw InvariantViolation("duplicate label in finite set");
}

FinSet FinSet::of_unique(std::vector<Element> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  FinSet s;
  s.elements_ = std::move(elements);
  return s;
}

bool FinSet::contains(const Element& e) const { return index_of(e).has_value(); }

std::optional<std::size_t> FinSet::index_of(const Element& e) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), e);
  if (it == elements_.end() || !(*it == e)) return std::nullopt;
  return static_cast<std::size_t>(it - elements_.begin());
}

std::string FinSet::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (i) s += ", ";
    s += elements_[i].to_string();
  }
  return s + "}";
}

FinSet probe_set(std::size_t n) {
  std::vector<Element> xs;
  xs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) xs.push_back(Element::base(std::to_string(i)));
  return FinSet(std::move(xs));
}

FinFunction::FinFunction(FinSet dom, FinSet cod, std::vector<Element> images)
    : dom_(std::move(dom)), cod_(std::move(cod)), images_(std::move(images)) {
  if (images_.size() != dom_.size())
    throw InvariantViolation("function table is not total on " + dom_.to_string());
  for (const auto& y : images_)
    if (!cod_.contains(y))
      throw InvariantViolation("image " + y.to_string() + " not in codomain " + cod_.to_string());
}

FinFunction FinFunction::tabulate(FinSet dom, FinSet cod, const ElementMap& f) {
  std::vector<Element> images;
  images.reserve(dom.size());
  for (const auto& x : dom) images.push_back(f(x));
  return FinFunction(std::move(dom), std::move(cod), std::move(images));
}

const Element& FinFunction::operator()(const Element& x) const {
  auto i = dom_.index_of(x);
  if (!i) throw DomainMismatch(x.to_string() + " is not in the domain " + dom_.to_string());
  return images_[*i];
}

ElementMap FinFunction::as_map() const {
  return [self = *this](const Element& x) { return self(x); };
}

std::string FinFunction::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < dom_.size(); ++i) {
    if (i) s += ", ";
    s += dom_[i].to_string() + "->" + images_[i].to_string();
  }
  return s + "}";
}

FinFunction identity(const FinSet& x) { return FinFunction(x, x, x.elements()); }

FinFunction compose(const FinFunction& g, const FinFunction& f) {
  if (!(f.cod() == g.dom()))
    throw DomainMismatch("cannot compose: codomain " + f.cod().to_string() +
                         " differs from domain " + g.dom().to_string());
  std::vector<Element> images;
  images.reserve(f.dom().size());
  for (const auto& y : f.images()) images.push_back(g(y));
  return FinFunction(f.dom(), g.cod(), std::move(images));
}

CoproductWitness coproduct(const FinSet& x, const FinSet& y) {
  std::vector<Element> all;
  all.reserve(x.size() + y.size());
  for (const auto& a : x) all.push_back(Element::left(a));
  for (const auto& b : y) all.push_back(Element::right(b));
  FinSet sum(std::move(all));
  return {sum, FinFunction::tabulate(x, sum, inl), FinFunction::tabulate(y, sum, inr)};
}

FinFunction copair(const FinFunction& f, const FinFunction& g) {
  if (!(f.cod() == g.cod()))
    throw DomainMismatch("cannot copair: codomains " + f.cod().to_string() + " and " +
                         g.cod().to_string() + " differ");
  auto w = coproduct(f.dom(), g.dom());
  return FinFunction::tabulate(w.sum, f.cod(), [&](const Element& s) {
    return s.is(Kind::L) ? f(s.inner()) : g(s.inner());
  });
}

FinFunction sum_map(const FinFunction& f, const FinFunction& g) {
  auto target = coproduct(f.cod(), g.cod());
  return copair(compose(target.inl, f), compose(target.inr, g));
}

std::vector<FinFunction> all_functions(const FinSet& x, const FinSet& y) {
  std::vector<FinFunction> out;
  if (y.empty() && !x.empty()) return out;
  std::vector<std::size_t> digits(x.size(), 0);
  while (true) {
    std::vector<Element> images;
    images.reserve(x.size());
    for (auto d : digits) images.push_back(y[d]);
    out.emplace_back(x, y, std::move(images));
    std::size_t i = 0;
    while (i < digits.size() && ++digits[i] == y.size()) digits[i++] = 0;
    if (i == digits.size()) break;
  }
  return out;
}

ElementMap copair(ElementMap on_left, ElementMap on_right) {
  return [l = std::move(on_left), r = std::move(on_right)](const Element& s) {
    if (s.is(Kind::L)) return l(s.inner());
    if (s.is(Kind::R)) return r(s.inner());
    throw DomainMismatch("copair applied to untagged element " + s.to_string());
  };
}

ElementMap sum_map(ElementMap on_left, ElementMap on_right) {
  return copair([l = std::move(on_left)](const Element& x) { return inl(l(x)); },
                [r = std::move(on_right)](const Element& y) { return inr(r(y)); });
}

Element inl(const Element& x) { return Element::left(x); }
Element inr(const Element& y) { return Element::right(y); }

}  // namespace semifree
