#pragma once

#include "semifree/dl.hpp"

namespace semifree {

/// For a weak law lambda: law_to_lifting(lambda) passes verify_lifting and
/// the stability condition on the family, lifting_to_law gives lambda back, and the
/// lifting rebuilt from that law agrees with the original one.
Report check_lifting_roundtrip(const NatTrans& lambda, const std::vector<Semialgebra>& family);

/// For a weak law lambda: weak_to_strong(lambda) is strong, satisfies the inr
/// condition,
/// and strong_to_weak maps it back to lambda.
Report check_weak_to_strong_roundtrip(const NatTrans& lambda);

/// For a strong law delta satisfying the inr condition: weak_to_strong(strong_to_weak(delta))
/// is delta.
Report check_strong_to_weak_roundtrip(const NatTrans& delta);

}  // namespace semifree
