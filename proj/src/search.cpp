#include "semifree/search.hpp"

#include "semifree/errors.hpp"

#include <algorithm>
#include <cstdlib>

namespace semifree {

std::size_t search_cap() {
  if (const char* env = std::getenv("SEMIFREE_CAP")) {
    char* end = nullptr;
    auto v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    throw InvariantViolation(std::string("SEMIFREE_CAP must be a positive integer, got '") + env + "'");
  }
  return 10'000'000;
}

SearchAborted::SearchAborted(std::size_t n, std::size_t f, std::size_t s)
    : std::runtime_error("search aborted after " + std::to_string(n) + " partial assignments (" +
                         std::to_string(f) + " complete tables found, filling probe size " + std::to_string(s) + ")"),
      nodes(n),
      found(f),
      stage(s) {}

namespace {

class Searcher {
public:
  Searcher(const SearchSpace& s, std::size_t cap) : s_(s), cap_(cap), src_{s.m, s.t}, tgt_{s.t, s.m} {}

  std::vector<NatTrans> run() {
    comps_.assign(s_.max_probe + 1, {});
    stage(0);
    std::sort(found_.begin(), found_.end(),
              [](const NatTrans& a, const NatTrans& b) { return a.to_string() < b.to_string(); });
    return std::move(found_);
  }

  std::size_t nodes() const { return nodes_; }

private:
  struct Link {
    std::size_t from, to;  // comp[to] must equal TMf(comp[from])
    FinFunction f;
  };

  void stage(std::size_t n) {
    if (n > s_.max_probe) {
      found_.emplace_back(s_.m, s_.t, s_.max_probe, s_.bound, comps_);
      return;
    }
    auto probe = probe_set(n);
    auto inputs = src_.enumerate(probe, s_.bound);
    auto outputs = tgt_.enumerate(probe, s_.bound);
    std::unordered_map<Element, std::size_t, ElementHash> index;
    for (std::size_t k = 0; k < inputs.size(); ++k) index.emplace(inputs[k], k);

    std::vector<std::vector<Element>> allowed(inputs.size(), outputs);
    // maps into smaller probes constrain each entry on its own
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& f : all_functions(probe, probe_set(j))) {
        auto fm = f.as_map();
        for (std::size_t k = 0; k < inputs.size(); ++k) {
          const auto& want = comps_[j].at(src_.fmap(fm, inputs[k]));
          std::erase_if(allowed[k], [&](const Element& c) { return !(tgt_.fmap(fm, c) == want); });
        }
      }
    // maps from smaller probes pin entries outright
    for (std::size_t i = 0; i < n; ++i)
      for (const auto& f : all_functions(probe_set(i), probe)) {
        auto fm = f.as_map();
        for (const auto& [e, v] : comps_[i]) {
          auto k = index.at(src_.fmap(fm, e));
          auto pinned = tgt_.fmap(fm, v);
          std::erase_if(allowed[k], [&](const Element& c) { return !(c == pinned); });
        }
      }
    // endomaps relate pairs of entries; checked once both are assigned
    std::vector<std::vector<Link>> links(inputs.size());
    for (const auto& f : all_functions(probe, probe)) {
      if (f == identity(probe)) continue;
      auto fm = f.as_map();
      for (std::size_t k = 0; k < inputs.size(); ++k) {
        auto to = index.at(src_.fmap(fm, inputs[k]));
        links[std::max(k, to)].push_back({k, to, f});
      }
    }
    std::vector<Element> chosen(inputs.size());
    fill(n, 0, inputs, allowed, links, chosen);
  }

  void fill(std::size_t n, std::size_t k, const std::vector<Element>& inputs,
            const std::vector<std::vector<Element>>& allowed, const std::vector<std::vector<Link>>& links,
            std::vector<Element>& chosen) {
    if (k == inputs.size()) {
      NatTrans::Component c;
      for (std::size_t i = 0; i < inputs.size(); ++i) c.emplace(inputs[i], chosen[i]);
      comps_[n] = std::move(c);
      stage(n + 1);
      comps_[n].clear();
      return;
    }
    for (const auto& cand : allowed[k]) {
      if (++nodes_ > cap_) throw SearchAborted(nodes_, found_.size(), n);
      chosen[k] = cand;
      bool ok = true;
      for (const auto& l : links[k])
        if (!(chosen[l.to] == tgt_.fmap(l.f.as_map(), chosen[l.from]))) {
          ok = false;
          break;
        }
      if (ok) fill(n, k + 1, inputs, allowed, links, chosen);
    }
  }

  const SearchSpace& s_;
  std::size_t cap_;
  Composite src_, tgt_;
  std::vector<NatTrans::Component> comps_;
  std::vector<NatTrans> found_;
  std::size_t nodes_ = 0;
};

}  // namespace

std::vector<NatTrans> enumerate_nat_trans(const SearchSpace& s, std::size_t cap) {
  if (!s.m || !s.t) throw InvariantViolation("search space needs both monads");
  if (!s.m->finite_under(s.bound) || !s.t->finite_under(s.bound))
    throw InvariantViolation("search needs finite enumerations of " + s.m->name() + " and " + s.t->name());
  Searcher searcher(s, cap);
  return searcher.run();
}

std::vector<NatTrans> enumerate_nat_trans(const SearchSpace& s) { return enumerate_nat_trans(s, search_cap()); }

SearchResult search_laws(const SearchSpace& s, std::size_t cap) {
  if (!s.m || !s.t) throw InvariantViolation("search space needs both monads");
  if (!s.m->finite_under(s.bound) || !s.t->finite_under(s.bound))
    throw InvariantViolation("search needs finite enumerations of " + s.m->name() + " and " + s.t->name());
  Searcher searcher(s, cap);
  SearchResult r;
  r.laws = searcher.run();
  r.nodes = searcher.nodes();
  for (const auto& l : r.laws) {
    auto c = classify_law(l);
    switch (c.verdict) {
      case Verdict::Strong: ++r.strong; break;
      case Verdict::WeakOnly: ++r.weak_only; break;
      case Verdict::Neither: ++r.neither; break;
    }
    r.classifications.push_back(std::move(c));
  }
  return r;
}

SearchResult search_laws(const SearchSpace& s) { return search_laws(s, search_cap()); }

}  // namespace semifree
