#pragma once

#include "semifree/dl.hpp"
#include "semifree/presentations.hpp"
#include "semifree/search.hpp"

#include "json.hpp"

#include <filesystem>

namespace semifree {

using Json = nlohmann::json;  // std::map-backed: keys come out sorted

/// Unreadable or unwritable file.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr int kReportSchema = 1;

// Elements are stored as their text form. Every *_from_json throws ParseError
// on malformed input and lets InvariantViolation through for ill-formed data.

Json to_json(const FinSet& s);                 // {"elements": [...]}
FinSet finset_from_json(const Json& j);
Json to_json(const FinFunction& f);            // {"cod", "dom", "table"}
FinFunction function_from_json(const Json& j);
Json to_json(const Bound& b);
Bound bound_from_json(const Json& j);

/// {"carrier", "monad", "table": [[input, output], ...]}; callback-backed
/// structures are tabulated on M(carrier) under `b`, dropping OutOfReach.
Json to_json(const Monad& m, const Semialgebra& a, const Bound& b);
Semialgebra semialgebra_from_json(const Json& j);

/// {"bound", "components": {"0": [[input, output], ...], ...}, "m",
/// "probes": [0, ..., k], "t"}
Json to_json(const NatTrans& lambda);
NatTrans nat_trans_from_json(const Json& j);

/// {"carrier", "ops": [{"arity", "name", "table": [element, ...]}, ...]} in
/// signature order.
Json to_json(const AlgebraModel& m);
AlgebraModel model_from_json(const Json& j);

/// Nested report without the schema field.
Json to_json(const Report& r);
/// Top-level report document: {"schema": 1, ...to_json(r)}.
Json report_document(const Report& r);

/// {"counts", "laws": [{"law", "verdict"}], "m", "nodes", "probes", "schema", "t"}
Json to_json(const SearchSpace& s, const SearchResult& r);
/// Laws of a search document, in stored order, with stored verdicts.
std::vector<std::pair<NatTrans, std::string>> laws_from_json(const Json& j);

Json read_json(const std::filesystem::path& p);   // throws IoError, ParseError
std::string read_text(const std::filesystem::path& p);  // throws IoError
void write_text(const std::filesystem::path& p, const std::string& text);  // throws IoError

}  // namespace semifree
