#pragma once

#include "semifree/dl.hpp"

#include <stdexcept>

namespace semifree {

struct SearchSpace {
  MonadPtr m;
  MonadPtr t;
  std::size_t max_probe = 2;
  Bound bound;
};

struct SearchResult {
  std::vector<NatTrans> laws;  // canonical order
  std::vector<LawClassification> classifications;
  std::size_t strong = 0;
  std::size_t weak_only = 0;
  std::size_t neither = 0;
  std::size_t nodes = 0;  // partial assignments visited
};

/// Default cap on partial assignments; SEMIFREE_CAP overrides it.
std::size_t search_cap();

/// Raised when the search visits more partial assignments than the cap.
struct SearchAborted : std::runtime_error {
  SearchAborted(std::size_t nodes, std::size_t found, std::size_t stage);
  std::size_t nodes;
  std::size_t found;  // complete tables found before the abort
  std::size_t stage;  // probe size being filled
};

/// Every family of component tables on the probe sets that is natural with
/// respect to all functions between them, sorted canonically.
std::vector<NatTrans> enumerate_nat_trans(const SearchSpace& s, std::size_t cap);
std::vector<NatTrans> enumerate_nat_trans(const SearchSpace& s);

/// enumerate_nat_trans followed by classify_law.
SearchResult search_laws(const SearchSpace& s, std::size_t cap);
SearchResult search_laws(const SearchSpace& s);

}  // namespace semifree
