#include "semifree/roundtrip.hpp"

#include "semifree/errors.hpp"

namespace semifree {

namespace {

Report equality(std::string law, bool same, const NatTrans& got, const NatTrans& want) {
  Report r;
  r.law = std::move(law);
  r.checked = 1;
  if (!same) r.fail({"", "", got.to_string(), want.to_string()});
  return r;
}

Report rejected(std::string law, const std::exception& e) {
  Report r;
  r.law = std::move(law);
  r.checked = 1;
  r.fail({"", "", "rejected", e.what()});
  return r;
}

}  // namespace

Report check_lifting_roundtrip(const NatTrans& lambda, const std::vector<Semialgebra>& family) {
  const std::string law = "weak law <-> lifting";
  try {
    auto lift = law_to_lifting(lambda);
    auto verified = verify_lifting(lift, family);
    auto six = check_lifting_condition6(lift, family);
    auto back = lifting_to_law(lift, lambda.max_probe());
    auto recovered = equality("lifting_to_law . law_to_lifting = id", same_components(back, lambda), back, lambda);
    Report agree;
    agree.law = "law_to_lifting . lifting_to_law = id";
    agree.checked = family.size();
    if (!liftings_agree(law_to_lifting(back), lift, family)) agree.fail({"", "", "rebuilt lifting", "differs"});
    return Report::all_of(law, {std::move(verified), std::move(six), std::move(recovered), std::move(agree)});
  } catch (const ValidityError& e) {
    return rejected(law, e);
  }
}

Report check_weak_to_strong_roundtrip(const NatTrans& lambda) {
  const std::string law = "weak law -> strong law -> weak law";
  try {
    auto delta = weak_to_strong(lambda);
    auto cls = classify_law(delta);
    Report strong;
    strong.law = "image is a strong law";
    strong.checked = 1;
    if (cls.verdict != Verdict::Strong) strong.fail({"", "", to_string(cls.verdict), "strong"});
    auto seven = check_condition7(delta);
    auto back = strong_to_weak(delta);
    auto recovered = equality("strong_to_weak . weak_to_strong = id", same_components(back, lambda), back, lambda);
    return Report::all_of(law, {std::move(strong), std::move(seven), std::move(recovered)});
  } catch (const ValidityError& e) {
    return rejected(law, e);
  }
}

Report check_strong_to_weak_roundtrip(const NatTrans& delta) {
  const std::string law = "strong law -> weak law -> strong law";
  try {
    auto back = weak_to_strong(strong_to_weak(delta));
    return Report::all_of(law, {equality("weak_to_strong . strong_to_weak = id", same_components(back, delta), back, delta)});
  } catch (const ValidityError& e) {
    return rejected(law, e);
  }
}

}  // namespace semifree
