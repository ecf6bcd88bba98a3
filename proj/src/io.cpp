#include "semifree/io.hpp"

#include "semifree/errors.hpp"
#include "semifree/semifree.hpp"

#include <fstream>
#include <sstream>

namespace semifree {

namespace {

// nlohmann's type errors become ParseError so callers see one failure kind.
template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

Element element_from(const Json& j) { return parse_element(j.get<std::string>()); }

Json elements(const std::vector<Element>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(x.to_string());
  return out;
}

std::vector<Element> elements_from(const Json& j) {
  std::vector<Element> out;
  for (const auto& x : j) out.push_back(element_from(x));
  return out;
}

Json pairs(const std::vector<std::pair<Element, Element>>& table) {
  Json out = Json::array();
  for (const auto& [k, v] : table) out.push_back({k.to_string(), v.to_string()});
  return out;
}

std::vector<std::pair<Element, Element>> pairs_from(const Json& j) {
  std::vector<std::pair<Element, Element>> out;
  for (const auto& kv : j) {
    if (!kv.is_array() || kv.size() != 2) throw ParseError("table entries are [input, output] pairs");
    out.emplace_back(element_from(kv[0]), element_from(kv[1]));
  }
  return out;
}

Json probe_sizes(std::size_t max_probe) {
  Json out = Json::array();
  for (std::size_t n = 0; n <= max_probe; ++n) out.push_back(n);
  return out;
}

// Probe families are always {0, ..., k}.
std::size_t max_probe_from(const Json& j) {
  auto sizes = j.get<std::vector<std::size_t>>();
  if (sizes.empty()) throw ParseError("empty probe family");
  for (std::size_t i = 0; i < sizes.size(); ++i)
    if (sizes[i] != i) throw ParseError("probe sizes must be 0, 1, ..., k");
  return sizes.back();
}

}  // namespace

Json to_json(const FinSet& s) { return {{"elements", elements(s.elements())}}; }

FinSet finset_from_json(const Json& j) {
  return guarded("finite set", [&] { return FinSet(elements_from(j.at("elements"))); });
}

Json to_json(const FinFunction& f) {
  return {{"dom", to_json(f.dom())}, {"cod", to_json(f.cod())}, {"table", elements(f.images())}};
}

FinFunction function_from_json(const Json& j) {
  return guarded("function", [&] {
    return FinFunction(finset_from_json(j.at("dom")), finset_from_json(j.at("cod")), elements_from(j.at("table")));
  });
}

Json to_json(const Bound& b) {
  return {{"max_word_len", b.max_word_len}, {"max_denominator", b.max_denominator},
          {"max_subset_size", b.max_subset_size}};
}

Bound bound_from_json(const Json& j) {
  return guarded("bound", [&] {
    Bound b;
    b.max_word_len = j.value("max_word_len", b.max_word_len);
    b.max_denominator = j.value("max_denominator", b.max_denominator);
    b.max_subset_size = j.value("max_subset_size", b.max_subset_size);
    b.validate();
    return b;
  });
}

Json to_json(const Monad& m, const Semialgebra& a, const Bound& b) {
  std::vector<std::pair<Element, Element>> table;
  if (a.table_backed()) {
    table = a.table();
  } else {
    for (const auto& e : m.enumerate(a.carrier(), b)) {
      try {
        table.emplace_back(e, a(e));
      } catch (const OutOfReach&) {
      }
    }
  }
  std::sort(table.begin(), table.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return {{"monad", m.name()}, {"carrier", to_json(a.carrier())}, {"table", pairs(table)}};
}

Semialgebra semialgebra_from_json(const Json& j) {
  return guarded("semialgebra",
                 [&] { return Semialgebra::from_table(finset_from_json(j.at("carrier")), pairs_from(j.at("table"))); });
}

Json to_json(const NatTrans& lambda) {
  Json comps = Json::object();
  for (std::size_t n = 0; n <= lambda.max_probe(); ++n) comps[std::to_string(n)] = pairs(lambda.entries(n));
  return {{"m", lambda.m()->name()},
          {"t", lambda.t()->name()},
          {"probes", probe_sizes(lambda.max_probe())},
          {"bound", to_json(lambda.bound())},
          {"components", comps}};
}

NatTrans nat_trans_from_json(const Json& j) {
  return guarded("natural transformation", [&] {
    auto m = monad_by_name(j.at("m").get<std::string>());
    auto t = monad_by_name(j.at("t").get<std::string>());
    auto probes = max_probe_from(j.at("probes"));
    auto b = j.contains("bound") ? bound_from_json(j.at("bound")) : Bound{};
    const auto& comps = j.at("components");
    std::vector<NatTrans::Component> tables(probes + 1);
    for (std::size_t n = 0; n <= probes; ++n) {
      auto key = std::to_string(n);
      if (!comps.contains(key)) throw ParseError("missing component " + key);
      for (auto& [k, v] : pairs_from(comps.at(key)))
        if (!tables[n].emplace(k, v).second) throw ParseError("duplicate entry " + k.to_string());
    }
    return NatTrans(m, t, probes, b, std::move(tables));
  });
}

Json to_json(const AlgebraModel& m) {
  Json ops = Json::array();
  for (std::size_t i = 0; i < m.signature().ops().size(); ++i) {
    const auto& op = m.signature().ops()[i];
    std::vector<Element> images;
    for (auto k : m.tables()[i]) images.push_back(m.carrier()[k]);
    ops.push_back({{"name", op.name}, {"arity", op.arity}, {"table", elements(images)}});
  }
  return {{"carrier", to_json(m.carrier())}, {"ops", ops}};
}

AlgebraModel model_from_json(const Json& j) {
  return guarded("model", [&] {
    auto carrier = finset_from_json(j.at("carrier"));
    Signature sig;
    std::vector<std::vector<std::size_t>> tables;
    for (const auto& op : j.at("ops")) {
      sig.add(op.at("name").get<std::string>(), op.at("arity").get<int>());
      std::vector<std::size_t> table;
      for (const auto& e : elements_from(op.at("table"))) {
        auto k = carrier.index_of(e);
        if (!k) throw InvariantViolation(e.to_string() + " is not in the carrier");
        table.push_back(*k);
      }
      tables.push_back(std::move(table));
    }
    return AlgebraModel(std::move(carrier), std::move(sig), std::move(tables));
  });
}

Json to_json(const Report& r) {
  Json j = {{"law", r.law},
            {"status", r.pass ? "pass" : "fail"},
            {"checked", r.checked},
            {"skipped", r.skipped},
            {"counterexample", nullptr}};
  if (!r.note.empty()) j["note"] = r.note;
  if (r.counterexample)
    j["counterexample"] = {{"context", r.counterexample->context},
                           {"input", r.counterexample->input},
                           {"lhs", r.counterexample->lhs},
                           {"rhs", r.counterexample->rhs}};
  if (!r.parts.empty()) {
    j["parts"] = Json::array();
    for (const auto& p : r.parts) j["parts"].push_back(to_json(p));
  }
  return j;
}

Json report_document(const Report& r) {
  auto j = to_json(r);
  j["schema"] = kReportSchema;
  return j;
}

Json to_json(const SearchSpace& s, const SearchResult& r) {
  Json laws = Json::array();
  for (std::size_t i = 0; i < r.laws.size(); ++i)
    laws.push_back({{"law", to_json(r.laws[i])}, {"verdict", to_string(r.classifications[i].verdict)}});
  return {{"schema", kReportSchema},
          {"m", s.m->name()},
          {"t", s.t->name()},
          {"probes", probe_sizes(s.max_probe)},
          {"nodes", r.nodes},
          {"counts", {{"natural", r.laws.size()}, {"strong", r.strong}, {"weak-only", r.weak_only}, {"neither", r.neither}}},
          {"laws", laws}};
}

std::vector<std::pair<NatTrans, std::string>> laws_from_json(const Json& j) {
  return guarded("search results", [&] {
    std::vector<std::pair<NatTrans, std::string>> out;
    for (const auto& l : j.at("laws")) out.emplace_back(nat_trans_from_json(l.at("law")), l.at("verdict").get<std::string>());
    return out;
  });
}

std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw IoError("cannot read " + p.string());
  std::ostringstream s;
  s << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + p.string());
  return s.str();
}

Json read_json(const std::filesystem::path& p) {
  auto text = read_text(p);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(p.string() + ": " + e.what());
  }
}

void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p);
  if (!out || !(out << text) || !out.flush()) throw IoError("cannot write " + p.string());
}

}  // namespace semifree
