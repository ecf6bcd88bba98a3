// Command-line front end. Exit codes: 0 every check passed, 1 a mathematical
// check failed (the report carries the counterexample), 2 usage or input error.

#include "semifree/errors.hpp"
#include "semifree/io.hpp"
#include "semifree/presentations.hpp"
#include "semifree/roundtrip.hpp"
#include "semifree/search.hpp"
#include "semifree/semifree.hpp"

#include "CLI11.hpp"

#include <iostream>

using namespace semifree;

namespace {

struct Config {
  std::string monad;
  std::size_t max_size = 2;
  std::size_t carrier = 2;
  int word_len = 3;
  int denominator = 2;
  int grid = 4;
  int subset_cap = 0;
  std::string in;
  std::string out;
  std::string to;
  std::string format = "text";
  std::string m = "maybe";
  std::string t = "maybe";
  std::size_t probe_max = 2;
  std::string base;

  Bound bound() const {
    Bound b;
    b.max_word_len = word_len;
    b.max_denominator = denominator;
    b.max_subset_size = subset_cap;
    b.validate();
    return b;
  }
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int emit(const Config& c, const Report& r) {
  std::string text = c.format == "json" ? report_document(r).dump(2) + "\n" : r.render();
  if (c.out.empty())
    std::cout << text;
  else
    write_text(c.out, text);
  return r.pass ? 0 : 1;
}

int check_monad(const Config& c) {
  auto m = monad_by_name(c.monad);
  auto b = c.bound();
  std::vector<Report> parts;
  for (std::size_t n = 0; n <= c.max_size; ++n) parts.push_back(check_monad_laws(*m, probe_set(n), b));
  return emit(c, Report::all_of(m->name() + " monad laws on probe sets of size <= " + std::to_string(c.max_size),
                                std::move(parts)));
}

int check_iso(const Config& c) {
  auto m = monad_by_name(c.monad);
  return emit(c, check_ms_iso(m, probe_set(c.carrier), c.bound()));
}

int check_presentation(const Config& c) {
  PresentationOptions opt;
  opt.word_len = c.word_len;
  opt.grid = c.grid;
  return emit(c, check_presentation_iso(c.monad, probe_set(c.carrier), opt));
}

NatTrans load_law(const Config& c) {
  if (c.in.empty()) throw UsageError("--in is required");
  return nat_trans_from_json(read_json(c.in));
}

int classify(const Config& c) {
  auto lambda = load_law(c);
  auto nat = check_naturality(lambda);
  if (!nat.pass) return emit(c, nat);
  auto r = classify_law(lambda).summary();
  return emit(c, r);
}

int convert(const Config& c) {
  if (c.to != "strong" && c.to != "weak") throw UsageError("--to must be strong or weak");
  auto lambda = load_law(c);
  auto nat = check_naturality(lambda);
  if (!nat.pass) return emit(c, nat);
  Report r;
  r.law = "convert " + lambda.m()->name() + "/" + lambda.t()->name() + " law to " + c.to;
  r.checked = 1;
  try {
    auto converted = c.to == "strong" ? weak_to_strong(lambda) : strong_to_weak(lambda);
    auto text = to_json(converted).dump(2) + "\n";
    Config report_to_stdout = c;
    report_to_stdout.out.clear();
    if (c.out.empty()) {
      std::cout << text;
      return 0;
    }
    write_text(c.out, text);
    r.note = "written to " + c.out;
    return emit(report_to_stdout, r);
  } catch (const ValidityError& e) {
    r.fail({"", "", "rejected", e.what()});
    auto cls = classify_law(lambda).summary();
    return emit(c, Report::all_of(r.law, {cls, r}));
  }
}

std::vector<std::pair<NatTrans, Verdict>> laws_for(const Config& c) {
  std::vector<std::pair<NatTrans, Verdict>> out;
  if (!c.in.empty()) {
    auto doc = read_json(c.in);
    if (doc.contains("laws")) {
      for (auto& [law, _] : laws_from_json(doc)) {
        auto v = check_naturality(law).pass ? classify_law(law).verdict : Verdict::Neither;
        out.emplace_back(std::move(law), v);
      }
    } else {
      auto law = nat_trans_from_json(doc);
      auto v = check_naturality(law).pass ? classify_law(law).verdict : Verdict::Neither;
      out.emplace_back(std::move(law), v);
    }
    return out;
  }
  SearchSpace s{monad_by_name(c.m), monad_by_name(c.t), c.probe_max, c.bound()};
  auto r = search_laws(s);
  for (std::size_t i = 0; i < r.laws.size(); ++i) out.emplace_back(r.laws[i], r.classifications[i].verdict);
  return out;
}

int roundtrip(const Config& c) {
  std::vector<Report> parts;
  auto laws = laws_for(c);
  for (std::size_t i = 0; i < laws.size(); ++i) {
    const auto& [law, verdict] = laws[i];
    if (verdict == Verdict::Neither) continue;
    std::vector<Report> sub;
    if (law.m()->name().ends_with("-semifree")) {
      if (verdict == Verdict::Strong && check_condition7(law).pass) sub.push_back(check_strong_to_weak_roundtrip(law));
    } else {
      auto family = semialgebra_family(*law.m(), law.max_probe(), law.bound());
      sub.push_back(check_lifting_roundtrip(law, family));
      sub.push_back(check_weak_to_strong_roundtrip(law));
    }
    if (!sub.empty()) parts.push_back(Report::all_of("law #" + std::to_string(i) + " (" + to_string(verdict) + ")", std::move(sub)));
  }
  auto r = Report::all_of("round trips", std::move(parts));
  r.note = std::to_string(r.parts.size()) + " laws";
  return emit(c, r);
}

int search(const Config& c) {
  SearchSpace s{monad_by_name(c.m), monad_by_name(c.t), c.probe_max, c.bound()};
  Report r;
  r.law = "search " + s.m->name() + " . " + s.t->name() + " => " + s.t->name() + " . " + s.m->name() +
          " on probes <= " + std::to_string(s.max_probe);
  try {
    auto res = search_laws(s);
    r.checked = res.laws.size();
    r.note = std::to_string(res.laws.size()) + " natural: " + std::to_string(res.strong) + " strong, " +
             std::to_string(res.weak_only) + " weak-only, " + std::to_string(res.neither) + " neither";
    if (!c.out.empty()) {
      write_text(c.out, to_json(s, res).dump(2) + "\n");
      Config report_to_stdout = c;
      report_to_stdout.out.clear();
      return emit(report_to_stdout, r);
    }
    return emit(c, r);
  } catch (const SearchAborted& e) {
    r.fail({"cap " + std::to_string(search_cap()), "probe size " + std::to_string(e.stage),
            std::to_string(e.nodes) + " nodes", std::to_string(e.found) + " tables found"});
    Config report_to_stdout = c;
    report_to_stdout.out.clear();
    return emit(report_to_stdout, r);
  }
}

Theory base_theory(const std::string& name) {
  if (name == "pointed") return pointed_set_theory();
  if (name == "semigroup") return semigroup_theory();
  if (name == "semilattice") return semilattice_theory();
  if (name == "convex") return convex_theory(convex_grid(4));
  return parse_theory(read_text(name));
}

int check_conjecture(const Config& c) {
  if (c.base.empty()) throw UsageError("--base is required");
  auto th = conjecture_signature(base_theory(c.base));
  if (c.base == "pointed") return emit(c, compare_theories(th, maybe_semifree_theory(), c.max_size));
  if (c.base == "semigroup") return emit(c, compare_theories(th, semigroup_semifree_theory(), c.max_size));
  if (c.base == "convex") return emit(c, compare_theories(th, convex_semifree_theory(convex_grid(4)), c.max_size));
  std::vector<Report> parts;
  auto powerset = builtin("powerset");
  for (std::size_t n = 0; n <= c.max_size; ++n) {
    Report p;
    p.law = "carrier of size " + std::to_string(n);
    p.checked = 1;
    auto models = enumerate_models(th, probe_set(n)).size();
    p.note = std::to_string(models) + " models";
    if (c.base == "semilattice") {
      auto semis = enumerate_semialgebras(*powerset, probe_set(n), Bound{}).size();
      p.note += ", " + std::to_string(semis) + " powerset-semialgebras";
      if (models != semis) p.fail({"", probe_set(n).to_string(), std::to_string(models), std::to_string(semis)});
    }
    parts.push_back(std::move(p));
  }
  return emit(c, Report::all_of("conjectured presentation from " + c.base, std::move(parts)));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semifree monads, semialgebras and weak distributive laws on finite sets"};
  app.require_subcommand(1);
  Config c;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", c.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--out", c.out, "write the output here instead of stdout");
    sub->add_option("--word-len", c.word_len, "nelist word bound")->check(CLI::PositiveNumber);
    sub->add_option("--denominator", c.denominator, "dist weight denominator")->check(CLI::PositiveNumber);
    sub->add_option("--subset-cap", c.subset_cap, "powerset subset size cap (0: none)")->check(CLI::NonNegativeNumber);
  };

  auto* monad = app.add_subcommand("check-monad", "monad laws on probe sets");
  monad->add_option("--monad", c.monad, "maybe, powerset, nelist, dist, optionally with -semifree")->required();
  monad->add_option("--max-size", c.max_size, "largest probe set");
  common(monad);

  auto* iso = app.add_subcommand("check-iso", "Ms-algebras versus M-semialgebras");
  iso->add_option("--monad", c.monad)->required();
  iso->add_option("--carrier", c.carrier, "carrier size");
  common(iso);

  auto* pres = app.add_subcommand("check-presentation", "semialgebras versus models of the presentation");
  pres->add_option("--monad", c.monad)->required()->check(CLI::IsMember({"maybe", "nelist", "dist"}));
  pres->add_option("--carrier", c.carrier, "carrier size");
  pres->add_option("--grid", c.grid, "dist: weights with denominators up to this")->check(CLI::Range(2, 12));
  common(pres);

  auto* cls = app.add_subcommand("classify-law", "evaluate the four law diagrams");
  cls->add_option("--in", c.in, "natural transformation JSON")->required();
  common(cls);

  auto* conv = app.add_subcommand("convert-law", "weak <-> strong law conversion");
  conv->add_option("--in", c.in, "natural transformation JSON")->required();
  conv->add_option("--to", c.to, "strong or weak")->required()->check(CLI::IsMember({"strong", "weak"}));
  common(conv);

  auto* trip = app.add_subcommand("roundtrip", "lifting and conversion round trips");
  trip->add_option("--in", c.in, "law or search-results JSON (default: search --m/--t)");
  trip->add_option("--m", c.m);
  trip->add_option("--t", c.t);
  trip->add_option("--probe-max", c.probe_max);
  common(trip);

  auto* srch = app.add_subcommand("search-laws", "enumerate natural MT => TM and classify");
  srch->add_option("--m", c.m);
  srch->add_option("--t", c.t);
  srch->add_option("--probe-max", c.probe_max);
  common(srch);

  auto* conj = app.add_subcommand("check-conjecture", "presentation generated from a base theory");
  conj->add_option("--base", c.base, "pointed, semigroup, semilattice, convex, or a theory file")->required();
  conj->add_option("--max-size", c.max_size, "largest carrier");
  common(conj);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*monad) return check_monad(c);
    if (*iso) return check_iso(c);
    if (*pres) return check_presentation(c);
    if (*cls) return classify(c);
    if (*conv) return convert(c);
    if (*trip) return roundtrip(c);
    if (*srch) return search(c);
    if (*conj) return check_conjecture(c);
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << "\n";
  } catch (const IoError& e) {
    std::cerr << "io: " << e.what() << "\n";
  } catch (const ParseError& e) {
    std::cerr << "parse: " << e.what() << "\n";
  } catch (const UnknownMonad& e) {
    std::cerr << "unknown monad: " << e.what() << "\n";
  } catch (const DomainMismatch& e) {
    std::cerr << "mismatch: " << e.what() << "\n";
  } catch (const InvariantViolation& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
  }
  return 2;
}
