#pragma once

#include "semifree/monad.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace semifree {

struct Operation {
  std::string name;
  int arity = 0;
  friend bool operator==(const Operation&, const Operation&) = default;
};

/// Operation symbols with arities; names are unique.
class Signature {
public:
  Signature() = default;
  explicit Signature(std::vector<Operation> ops);

  /// Throws InvariantViolation on a duplicate name or negative arity.
  void add(std::string name, int arity);
  const std::vector<Operation>& ops() const noexcept { return ops_; }
  std::optional<std::size_t> find(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name).has_value(); }
  /// Same symbols with the same arities, in any order.
  bool same_symbols(const Signature& other) const;
  friend bool operator==(const Signature&, const Signature&) = default;

private:
  std::vector<Operation> ops_;
};

struct Term {
  bool is_var = true;
  std::string name;
  std::vector<Term> args;

  static Term var(std::string name);
  static Term app(std::string op, std::vector<Term> args = {});

  /// Replaces every variable x by f(x).
  Term substitute(const std::function<Term(const std::string&)>& f) const;
  void collect_variables(std::vector<std::string>& out) const;
  bool mentions(std::string_view op) const;
  std::string to_string() const;
  friend bool operator==(const Term&, const Term&) = default;
};

struct Equation {
  Term lhs;
  Term rhs;
  /// Variables of both sides, sorted, without repeats.
  std::vector<std::string> variables() const;
  std::string to_string() const;
  friend bool operator==(const Equation&, const Equation&) = default;
};

struct Theory {
  Signature signature;
  std::vector<Equation> equations;
};

/// Lines are `op NAME ARITY`, `LHS = RHS` with prefix terms `f(t1,...,tn)`,
/// blank, or `#` comments. A bare name is a declared constant or else a
/// variable. Throws ParseError.
Theory parse_theory(std::string_view text);
std::string to_text(const Theory& th);
/// Throws ParseError; arities are checked against `sig`.
Term parse_term(std::string_view text, const Signature& sig);

/// A finite model: one total table per operation, indexed row-major by the
/// positions of the arguments in the carrier.
class AlgebraModel {
public:
  AlgebraModel(FinSet carrier, Signature sig, std::vector<std::vector<std::size_t>> tables);
  /// Builds each table by evaluating `op` on every argument tuple.
  static AlgebraModel tabulate(FinSet carrier, Signature sig,
                               const std::function<Element(const std::string&, std::span<const Element>)>& op);

  const FinSet& carrier() const noexcept { return carrier_; }
  const Signature& signature() const noexcept { return sig_; }
  const std::vector<std::vector<std::size_t>>& tables() const noexcept { return tables_; }

  /// Throws InvariantViolation on unknown op, arity mismatch or foreign args.
  Element apply(std::string_view op, std::span<const Element> args) const;
  std::string to_string() const;
  friend bool operator==(const AlgebraModel&, const AlgebraModel&) = default;

private:
  FinSet carrier_;
  Signature sig_;
  std::vector<std::vector<std::size_t>> tables_;
};

using Environment = std::map<std::string, Element>;

/// Throws InvariantViolation on an unbound variable or arity mismatch.
Element eval_term(const AlgebraModel& m, const Term& t, const Environment& env);
/// Every equation under every environment over the carrier.
Report check_equations(const AlgebraModel& m, const std::vector<Equation>& eqs);
/// f commutes with every operation, on all argument tuples.
bool is_model_homomorphism(const AlgebraModel& a, const AlgebraModel& b, const FinFunction& f);

/// All models of the theory on the carrier, by backtracking over table
/// entries and pruning as soon as an equation instance is fully defined and
/// false. Canonical order.
std::vector<AlgebraModel> enumerate_models(const Theory& th, const FinSet& carrier);

// Theories.

/// Fractions p in (0,1) with denominator at most n, increasing.
std::vector<Rational> convex_grid(int n);
/// Name of the binary operation x +_p y.
std::string convex_op(const Rational& p);
/// (pq, p(1-q)/(1-pq)): (x +_q y) +_p z = x +_pq (y +_r z).
std::pair<Rational, Rational> skew_parameters(const Rational& p, const Rational& q);

Theory maybe_semifree_theory();       // abar, pt
Theory semigroup_semifree_theory();   // abar, mul
Theory convex_semifree_theory(const std::vector<Rational>& grid);  // abar, +[p]

Theory pointed_set_theory();   // pt
Theory semigroup_theory();     // mul
Theory semilattice_theory();   // join, bot
Theory convex_theory(const std::vector<Rational>& grid);

/// Adds abar with abar abar x = abar x, and for every operation f
/// abar f(xs) = f(xs) and f(xs) = f(abar xs) (the latter omitted for
/// constants, where it is trivial), and every base equation with each
/// variable x replaced by abar x. Throws InvariantViolation if the base
/// already has abar.
Theory conjecture_signature(const Theory& base);

/// Both theories have the same models on every carrier of size <= max_size.
Report compare_theories(const Theory& a, const Theory& b, std::size_t max_size);

// Translations between semialgebras and models.

AlgebraModel maybe_to_model(const Semialgebra& a, const Bound& b);
Semialgebra model_to_maybe(const AlgebraModel& m);

AlgebraModel semigroup_to_model(const Semialgebra& a, const Bound& b);
/// [x1..xn] |-> abar x1 . ... . abar xn (total on non-empty words).
Semialgebra model_to_semigroup(const AlgebraModel& m);

AlgebraModel dist_to_model(const Semialgebra& a, const std::vector<Rational>& grid);
/// sum p_i x_i |-> (+)_i p_i abar x_i, left nested. Reweightings that leave
/// the grid are OutOfReach.
Semialgebra model_to_dist(const AlgebraModel& m, const std::vector<Rational>& grid);

/// Table-backed copy of `a` on the enumerated part of M(carrier).
Semialgebra restrict_to(const Monad& m, const Semialgebra& a, const Bound& b);

/// Left-nested product x1 . ... . xn.
Element fold_product(const AlgebraModel& m, std::span<const Element> xs);
/// Left-nested (+)_i p_i x_i with weights summing to 1.
Element fold_convex(const AlgebraModel& m, std::span<const std::pair<Element, Rational>> terms);

/// abar x1...abar xn = x1...xn = abar(x1...xn) for all n-tuples.
Report check_semigroup_lemma(const AlgebraModel& m, std::size_t n);
/// abar((+) p_i x_i) = (+) p_i x_i = (+) p_i abar x_i for all n-tuples and
/// all grid weight vectors; instances leaving the grid are skipped.
Report check_convex_lemma(const AlgebraModel& m, const std::vector<Rational>& grid, std::size_t n);

/// Distributions on X whose weights lie in the grid or are 1.
std::vector<Element> grid_distributions(const FinSet& x, const std::vector<Rational>& grid);
/// Distributions over grid_distributions(X) with at most `max_support`
/// points and grid weights: the second layer used for associativity.
std::vector<Element> grid_towers(const FinSet& x, const std::vector<Rational>& grid, std::size_t max_support);
/// Tables grid_distributions(X) -> X associative on every grid tower whose
/// two paths stay inside the table.
std::vector<Semialgebra> grid_semialgebras(const FinSet& x, const std::vector<Rational>& grid,
                                           std::size_t max_support = 3);
Report check_grid_semialgebra(const Semialgebra& a, const std::vector<Rational>& grid, std::size_t max_support = 3);

struct PresentationOptions {
  int word_len = 3;  // nelist
  int grid = 4;      // dist: convex_grid(grid)
};

/// Enumerates the models of the semifree theory for `monad` (maybe, nelist
/// or dist) and the semialgebras on the carrier, and checks that the
/// translations are mutually inverse bijections that transport
/// homomorphisms in both directions.
Report check_presentation_iso(const std::string& monad, const FinSet& carrier, const PresentationOptions& opt = {});

}  // namespace semifree
