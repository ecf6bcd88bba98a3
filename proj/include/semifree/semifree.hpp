#pragma once

#include "semifree/monad.hpp"

namespace semifree {

/// M^s = Id + M with unit inl and multiplication
/// [id, inr . mu . M[eta, id]]. Elements are L(x) or R(m) with m in MX.
class SemifreeMonad final : public Monad {
public:
  explicit SemifreeMonad(MonadPtr base);

  const MonadPtr& base() const noexcept { return base_; }

  std::string name() const override;
  Element unit(const Element& x) const override;
  Element mult(const Element& e) const override;
  Element fmap(const ElementMap& f, const Element& e) const override;
  /// {L(x)} followed by {R(m) : m enumerated in MX}.
  std::vector<Element> enumerate(const FinSet& x, const Bound& b) const override;
  bool finite_under(const Bound& b) const override;

private:
  MonadPtr base_;
};

std::shared_ptr<const SemifreeMonad> semifree_of(MonadPtr base);

/// A builtin name, or a builtin name followed by "-semifree".
MonadPtr monad_by_name(const std::string& name);

// An M^s-algebra is a Semialgebra for SemifreeMonad whose left component is
// the identity. Serialized forms keep only the right component, since the
// left one is forced.
using MsAlgebra = Semialgebra;

/// [id, a]. Throws ValidityError unless `a` is an M-semialgebra.
MsAlgebra to_ms_algebra(const MonadPtr& m, const Semialgebra& a, const Bound& b);
/// alpha . inr. Throws ValidityError unless `alpha` is an M^s-algebra.
Semialgebra from_ms_algebra(const MonadPtr& m, const MsAlgebra& alpha, const Bound& b);

/// a . M[id, a] = a . mu . M[eta, id] on enumerated M(X + MX).
Report check_eq13(const Monad& m, const Semialgebra& a, const Bound& b);

/// a . eta as an endomap of the carrier, after checking it is idempotent and
/// a semialgebra endomorphism of a. Throws ValidityError when `a` is not a
/// semialgebra and InvariantViolation if idempotence fails anyway.
FinFunction idempotent_of(const Monad& m, const Semialgebra& a, const Bound& b);

/// Enumerates M-semialgebras and M^s-algebras on the carrier and checks that
/// to_ms_algebra / from_ms_algebra are mutually inverse bijections that
/// transport homomorphisms. The note reads "N ↔ N bijection" on success.
/// Needs M(carrier) and M^s(carrier) finite under `b`.
Report check_ms_iso(const MonadPtr& m, const FinSet& carrier, const Bound& b);

/// phi = [eta, id] : M^s => M preserves units and both horizontal composites
/// of multiplication, on probe carriers of size <= max_size.
Report check_monad_morphism_eta_id(const MonadPtr& m, std::size_t max_size, const Bound& b,
                                   const std::optional<Bound>& nested = std::nullopt);

}  // namespace semifree
