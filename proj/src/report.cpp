#include "semifree/report.hpp"

#include "semifree/errors.hpp"

namespace semifree {

Report Report::all_of(std::string law, std::vector<Report> parts) {
  Report r;
  r.law = std::move(law);
  for (const auto& p : parts) {
    r.checked += p.checked;
    r.skipped += p.skipped;
    if (!p.pass && r.pass) {
      r.pass = false;
      r.counterexample = p.counterexample;
      if (r.counterexample && r.counterexample->context.empty())
        r.counterexample->context = p.law;
    }
  }
  r.parts = std::move(parts);
  return r;
}

void Report::fail(Counterexample cx) {
  if (pass) {
    pass = false;
    counterexample = std::move(cx);
  }
}

std::string Report::render(int indent) const {
  std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  std::string s = pad + (pass ? "[pass] " : "[FAIL] ") + law + " (" + std::to_string(checked) +
                  " checked";
  if (skipped) s += ", " + std::to_string(skipped) + " skipped";
  s += ")";
  if (!note.empty()) s += " " + note;
  s += "\n";
  if (counterexample && parts.empty()) {
    const auto& c = *counterexample;
    s += pad + "  counterexample";
    if (!c.context.empty()) s += " [" + c.context + "]";
    s += ": " + c.input;
    if (!c.lhs.empty() || !c.rhs.empty()) s += "  lhs=" + c.lhs + "  rhs=" + c.rhs;
    s += "\n";
  }
  for (const auto& p : parts) s += p.render(indent + 1);
  return s;
}

void absorb(Report& acc, const Report& part) {
  acc.checked += part.checked;
  acc.skipped += part.skipped;
  if (!part.pass && acc.pass) {
    acc.pass = false;
    acc.counterexample = part.counterexample;
  }
}

Report check_paths(std::string law, std::span<const Element> inputs, const PathFn& lhs,
                   const PathFn& rhs, const std::string& context) {
  Report r;
  r.law = std::move(law);
  for (const auto& x : inputs) {
    Element a, b;
    try {
      a = lhs(x);
      b = rhs(x);
    } catch (const OutOfReach&) {
      ++r.skipped;
      continue;
    } catch (const InvariantViolation& e) {
      // A path produced a value of the wrong shape: the square cannot commute.
      ++r.checked;
      r.fail({context, x.to_string(), "ill-shaped", e.what()});
      break;
    }
    ++r.checked;
    if (!(a == b)) {
      r.fail({context, x.to_string(), a.to_string(), b.to_string()});
      break;
    }
  }
  return r;
}

}  // namespace semifree
