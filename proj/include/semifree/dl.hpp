#pragma once

#include "semifree/monad.hpp"
#include "semifree/semifree.hpp"

#include <optional>
#include <unordered_map>

namespace semifree {

/// The composite functor outer . inner, acting on elements two levels deep.
struct Composite {
  MonadPtr outer;
  MonadPtr inner;

  std::string name() const;
  Element fmap(const ElementMap& f, const Element& e) const;
  /// outer(inner X) with both layers under `b`.
  std::vector<Element> enumerate(const FinSet& x, const Bound& b) const;
  /// The X-labels occurring in `e`, in canonical order.
  FinSet support(const Element& e) const;
};

/// A natural transformation MT => TM given by its components on the probe
/// sets {0..n-1}, n = 0..max_probe.
///
/// Evaluation at any other carrier relabels the support of the input onto
/// the probe set of the same size, looks the component up, and maps the
/// result back; this is the unique natural extension when the table is
/// natural. Inputs whose support is larger than max_probe are OutOfReach.
class NatTrans {
public:
  using Component = std::unordered_map<Element, Element, ElementHash>;

  /// Throws InvariantViolation unless each component is total on the
  /// enumerated MT(n) and every value only mentions labels of the probe set.
  NatTrans(MonadPtr m, MonadPtr t, std::size_t max_probe, Bound b, std::vector<Component> components);
  static NatTrans tabulate(MonadPtr m, MonadPtr t, std::size_t max_probe, Bound b, const ElementMap& f);

  const MonadPtr& m() const noexcept { return m_; }
  const MonadPtr& t() const noexcept { return t_; }
  std::size_t max_probe() const noexcept { return max_probe_; }
  const Bound& bound() const noexcept { return bound_; }
  Composite source() const { return {m_, t_}; }
  Composite target() const { return {t_, m_}; }

  /// Raw table lookup at probe size n (no relabelling).
  std::optional<Element> component(std::size_t n, const Element& e) const;
  /// Entries of component n in canonical order of inputs.
  std::vector<std::pair<Element, Element>> entries(std::size_t n) const;
  Element operator()(const Element& e) const;
  ElementMap as_map() const;

  std::string to_string() const;

private:
  MonadPtr m_, t_;
  std::size_t max_probe_;
  Bound bound_;
  std::shared_ptr<const std::vector<Component>> components_;
};

/// Same monads, probes and tables.
bool same_components(const NatTrans& a, const NatTrans& b);

/// Squares component_j . MT f = TM f . component_i for every f: i -> j
/// between probe sets, on the raw tables.
Report check_naturality(const NatTrans& lambda);

enum class Verdict { Strong, WeakOnly, Neither };
std::string to_string(Verdict v);

struct LawClassification {
  Report unit_m;  // lambda . eta^M T = T eta^M
  Report unit_t;  // lambda . M eta^T = eta^T M
  Report mult_m;  // lambda . mu^M T = T mu^M . lambda M . M lambda
  Report mult_t;  // lambda . M mu^T = mu^T M . T lambda . lambda T
  Verdict verdict = Verdict::Neither;

  Report summary() const;
};

/// Evaluates the four diagrams on every probe set. Throws ValidityError if
/// the table is not natural.
LawClassification classify_law(const NatTrans& lambda);

/// A lifting of T to M-semialgebras, given extensionally by its action.
/// The action must send a structure on X to one on TX.
class Lifting {
public:
  using Action = std::function<Semialgebra(const Semialgebra&)>;

  Lifting(MonadPtr m, MonadPtr t, Bound b, Action act);

  const MonadPtr& m() const noexcept { return m_; }
  const MonadPtr& t() const noexcept { return t_; }
  const Bound& bound() const noexcept { return bound_; }
  /// Throws InvariantViolation if the result is not carried by TX.
  Semialgebra operator()(const Semialgebra& a) const;

private:
  MonadPtr m_, t_;
  Bound bound_;
  Action act_;
};

/// Every M-semialgebra on probe carriers of size 0..max_size.
std::vector<Semialgebra> semialgebra_family(const Monad& m, std::size_t max_size, const Bound& b);

/// a |-> Ta . lambda_X, without checking anything about lambda.
Lifting lifting_from_transformation(const NatTrans& lambda);
/// As above; throws ValidityError unless lambda is at least a weak law.
Lifting law_to_lifting(const NatTrans& lambda);
/// lambda_X = T~(mu_X) . MT eta_X on the probe sets 0..max_probe.
NatTrans lifting_to_law(const Lifting& lift, std::size_t max_probe);
/// Both liftings give the same structure on every member of the family.
bool liftings_agree(const Lifting& a, const Lifting& b, const std::vector<Semialgebra>& family);

/// T~alpha = T~alpha . MT alpha . MT eta_A for every alpha in the family.
Report check_lifting_condition6(const Lifting& lift, const std::vector<Semialgebra>& family);

/// (i) outputs are semialgebras, (ii) eta^T_X is a homomorphism a -> T~a,
/// (iii) mu^T_X is a homomorphism T~T~a -> T~a, (iv) Tf is a homomorphism
/// T~a -> T~b whenever f: a -> b is, for all members of the family.
Report verify_lifting(const Lifting& lift, const std::vector<Semialgebra>& family);

/// A lifting that agrees with law_to_lifting(lambda) except on one
/// non-algebra member of the family, where the structure is replaced so
/// that the stability condition fails. Prefers replacements that keep verify_lifting
/// passing. Empty if no replacement breaks it.
struct Condition6Witness {
  Lifting lifting;
  Semialgebra replaced;
  bool still_a_lifting = false;
};
std::optional<Condition6Witness> find_condition6_violation(const NatTrans& lambda,
                                                           const std::vector<Semialgebra>& family);

/// delta = [T inl, delta^r] : M^s T => T M^s with
/// delta^r_X = T mu-bar_X . lambda_{M^s X} . MT inl and
/// mu-bar = inr . mu . M[eta, id]. Throws ValidityError unless lambda is weak.
NatTrans weak_to_strong(const NatTrans& lambda);

/// delta . inr = T[inr . eta, inr] . delta . inr on every probe set.
/// Throws InvariantViolation unless delta's first monad is semifree.
Report check_condition7(const NatTrans& delta);
/// delta^r = T[inr . eta, inr] . delta^r for delta^r = delta . inr, stated on
/// MTX directly.
Report check_condition8(const NatTrans& delta);

/// Builds T~x = T[id, x] . delta^r_X, checks the stability condition on the
/// semialgebras over probe carriers, and returns lifting_to_law of it.
/// Throws ValidityError if delta violates the inr condition or the lifting
/// is not stable.
NatTrans strong_to_weak(const NatTrans& delta);

/// Just(t) |-> T Just (t), Nothing |-> eta^T(Nothing): the standard law
/// maybe . T => T . maybe.
NatTrans canonical_maybe_law(const MonadPtr& t, std::size_t max_probe, const Bound& b);

}  // namespace semifree
