#include "semifree/presentations.hpp"

#include "semifree/errors.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <set>
#include <sstream>

namespace semifree {

Signature::Signature(std::vector<Operation> ops) {
  for (auto& op : ops) add(std::move(op.name), op.arity);
}

void Signature::add(std::string name, int arity) {
  if (arity < 0) throw InvariantViolation("negative arity for " + name);
  if (name.empty()) throw InvariantViolation("empty operation name");
  if (contains(name)) throw InvariantViolation("operation " + name + " declared twice");
  ops_.push_back({std::move(name), arity});
}

std::optional<std::size_t> Signature::find(std::string_view name) const {
  for (std::size_t i = 0; i < ops_.size(); ++i)
    if (ops_[i].name == name) return i;
  return std::nullopt;
}

bool Signature::same_symbols(const Signature& other) const {
  if (ops_.size() != other.ops_.size()) return false;
  for (const auto& op : ops_) {
    auto j = other.find(op.name);
    if (!j || other.ops_[*j].arity != op.arity) return false;
  }
  return true;
}

Term Term::var(std::string name) { return Term{true, std::move(name), {}}; }
Term Term::app(std::string op, std::vector<Term> args) { return Term{false, std::move(op), std::move(args)}; }

Term Term::substitute(const std::function<Term(const std::string&)>& f) const {
  if (is_var) return f(name);
  std::vector<Term> out;
  out.reserve(args.size());
  for (const auto& a : args) out.push_back(a.substitute(f));
  return app(name, std::move(out));
}

void Term::collect_variables(std::vector<std::string>& out) const {
  if (is_var) {
    out.push_back(name);
    return;
  }
  for (const auto& a : args) a.collect_variables(out);
}

bool Term::mentions(std::string_view op) const {
  if (is_var) return false;
  if (name == op) return true;
  return std::any_of(args.begin(), args.end(), [&](const Term& a) { return a.mentions(op); });
}

std::string Term::to_string() const {
  if (is_var || args.empty()) return name;
  std::string s = name + "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) s += ",";
    s += args[i].to_string();
  }
  return s + ")";
}

std::vector<std::string> Equation::variables() const {
  std::vector<std::string> vs;
  lhs.collect_variables(vs);
  rhs.collect_variables(vs);
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

std::string Equation::to_string() const { return lhs.to_string() + " = " + rhs.to_string(); }

namespace {

bool name_char(char c) {
  return !std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')' && c != ',' && c != '=' && c != '#';
}

class TermParser {
public:
  TermParser(std::string_view s, const Signature& sig) : s_(s), sig_(sig) {}

  Term parse_all() {
    auto t = term();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return t;
  }

private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("term '" + std::string(s_) + "': " + what + " at " + std::to_string(pos_));
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  Term term() {
    skip();
    auto start = pos_;
    while (pos_ < s_.size() && name_char(s_[pos_])) ++pos_;
    if (start == pos_) fail("expected a name");
    std::string name(s_.substr(start, pos_ - start));
    skip();
    std::vector<Term> args;
    bool call = pos_ < s_.size() && s_[pos_] == '(';
    if (call) {
      ++pos_;
      skip();
      if (pos_ < s_.size() && s_[pos_] == ')') {
        ++pos_;
      } else {
        while (true) {
          args.push_back(term());
          skip();
          if (pos_ < s_.size() && s_[pos_] == ',') {
            ++pos_;
            continue;
          }
          if (pos_ < s_.size() && s_[pos_] == ')') {
            ++pos_;
            break;
          }
          fail("expected ',' or ')'");
        }
      }
    }
    auto op = sig_.find(name);
    if (!op) {
      if (call) fail("undeclared operation " + name);
      return Term::var(std::move(name));
    }
    int arity = sig_.ops()[*op].arity;
    if (static_cast<int>(args.size()) != arity)
      fail(name + " expects " + std::to_string(arity) + " arguments, got " + std::to_string(args.size()));
    return Term::app(std::move(name), std::move(args));
  }

  std::string_view s_;
  const Signature& sig_;
  std::size_t pos_ = 0;
};

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front()))) line.remove_prefix(1);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.remove_suffix(1);
    out.push_back(line);
    start = end + 1;
  }
  return out;
}

}  // namespace

Term parse_term(std::string_view text, const Signature& sig) { return TermParser(text, sig).parse_all(); }

Theory parse_theory(std::string_view text) {
  Theory th;
  auto lines = lines_of(text);
  for (auto line : lines) {
    if (!line.starts_with("op ") && !line.starts_with("op\t")) continue;
    std::istringstream in{std::string(line.substr(3))};
    std::string name, arity_text, extra;
    if (!(in >> name >> arity_text) || (in >> extra)) throw ParseError("bad declaration '" + std::string(line) + "'");
    int arity = 0;
    try {
      std::size_t used = 0;
      arity = std::stoi(arity_text, &used);
      if (used != arity_text.size()) throw ParseError("");
    } catch (const std::exception&) {
      throw ParseError("bad arity in '" + std::string(line) + "'");
    }
    try {
      th.signature.add(name, arity);
    } catch (const InvariantViolation& e) {
      throw ParseError(e.what());
    }
  }
  for (auto line : lines) {
    if (line.empty() || line.starts_with("op ") || line.starts_with("op\t")) continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos || line.find('=', eq + 1) != std::string_view::npos)
      throw ParseError("expected 'lhs = rhs' in '" + std::string(line) + "'");
    th.equations.push_back({parse_term(line.substr(0, eq), th.signature), parse_term(line.substr(eq + 1), th.signature)});
  }
  return th;
}

std::string to_text(const Theory& th) {
  std::string s;
  for (const auto& op : th.signature.ops()) s += "op " + op.name + " " + std::to_string(op.arity) + "\n";
  for (const auto& eq : th.equations) s += eq.to_string() + "\n";
  return s;
}

namespace {

std::size_t ipow(std::size_t base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

AlgebraModel::AlgebraModel(FinSet carrier, Signature sig, std::vector<std::vector<std::size_t>> tables)
    : carrier_(std::move(carrier)), sig_(std::move(sig)), tables_(std::move(tables)) {
  if (tables_.size() != sig_.ops().size()) throw InvariantViolation("one table per operation expected");
  for (std::size_t i = 0; i < tables_.size(); ++i) {
    const auto& op = sig_.ops()[i];
    if (tables_[i].size() != ipow(carrier_.size(), op.arity))
      throw InvariantViolation("table for " + op.name + " is not total");
    for (auto v : tables_[i])
      if (v >= carrier_.size()) throw InvariantViolation("table for " + op.name + " leaves the carrier");
  }
}

AlgebraModel AlgebraModel::tabulate(FinSet carrier, Signature sig,
                                    const std::function<Element(const std::string&, std::span<const Element>)>& op) {
  std::vector<std::vector<std::size_t>> tables;
  const std::size_t n = carrier.size();
  for (const auto& o : sig.ops()) {
    std::vector<std::size_t> table(ipow(n, o.arity));
    std::vector<Element> args(static_cast<std::size_t>(o.arity));
    for (std::size_t idx = 0; idx < table.size(); ++idx) {
      auto rest = idx;
      for (int k = o.arity - 1; k >= 0; --k) {
        args[static_cast<std::size_t>(k)] = carrier[rest % n];
        rest /= n;
      }
      auto v = op(o.name, args);
      auto pos = carrier.index_of(v);
      if (!pos) throw InvariantViolation(o.name + " produced " + v.to_string() + " outside " + carrier.to_string());
      table[idx] = *pos;
    }
    tables.push_back(std::move(table));
  }
  return AlgebraModel(std::move(carrier), std::move(sig), std::move(tables));
}

Element AlgebraModel::apply(std::string_view op, std::span<const Element> args) const {
  auto i = sig_.find(op);
  if (!i) throw InvariantViolation("unknown operation " + std::string(op));
  const auto& o = sig_.ops()[*i];
  if (static_cast<int>(args.size()) != o.arity)
    throw InvariantViolation(o.name + " applied to " + std::to_string(args.size()) + " arguments");
  std::size_t idx = 0;
  for (const auto& a : args) {
    auto p = carrier_.index_of(a);
    if (!p) throw InvariantViolation(a.to_string() + " is not in the carrier " + carrier_.to_string());
    idx = idx * carrier_.size() + *p;
  }
  return carrier_[tables_[*i][idx]];
}

std::string AlgebraModel::to_string() const {
  std::string s = "carrier " + carrier_.to_string();
  const std::size_t n = carrier_.size();
  for (std::size_t i = 0; i < tables_.size(); ++i) {
    const auto& o = sig_.ops()[i];
    s += "; " + o.name + ":";
    for (std::size_t idx = 0; idx < tables_[i].size(); ++idx) {
      std::string args;
      auto rest = idx;
      for (int k = 0; k < o.arity; ++k) {
        args = carrier_[rest % n].to_string() + (k ? "," : "") + args;
        rest /= n;
      }
      s += " " + (o.arity ? "(" + args + ")" : std::string()) + "->" + carrier_[tables_[i][idx]].to_string();
    }
  }
  return s;
}

Element eval_term(const AlgebraModel& m, const Term& t, const Environment& env) {
  if (t.is_var) {
    auto it = env.find(t.name);
    if (it == env.end()) throw InvariantViolation("unbound variable " + t.name);
    return it->second;
  }
  std::vector<Element> args;
  args.reserve(t.args.size());
  for (const auto& a : t.args) args.push_back(eval_term(m, a, env));
  return m.apply(t.name, args);
}

namespace {

// Terms compiled against a signature, evaluated on carrier indices.
struct CTerm {
  int op = -1;  // -1: variable
  std::size_t var = 0;
  std::vector<CTerm> kids;
};

constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();

CTerm compile(const Term& t, const Signature& sig, const std::vector<std::string>& vars) {
  CTerm c;
  if (t.is_var) {
    c.var = static_cast<std::size_t>(std::find(vars.begin(), vars.end(), t.name) - vars.begin());
    return c;
  }
  auto i = sig.find(t.name);
  if (!i) throw InvariantViolation("unknown operation " + t.name);
  if (static_cast<int>(t.args.size()) != sig.ops()[*i].arity)
    throw InvariantViolation(t.name + " applied to " + std::to_string(t.args.size()) + " arguments");
  c.op = static_cast<int>(*i);
  for (const auto& a : t.args) c.kids.push_back(compile(a, sig, vars));
  return c;
}

std::size_t eval_idx(const CTerm& t, const std::vector<std::vector<std::size_t>>& tables, std::size_t n,
                     const std::vector<std::size_t>& env) {
  if (t.op < 0) return env[t.var];
  std::size_t idx = 0;
  for (const auto& k : t.kids) {
    auto v = eval_idx(k, tables, n, env);
    if (v == kUnset) return kUnset;
    idx = idx * n + v;
  }
  return tables[static_cast<std::size_t>(t.op)][idx];
}

struct CEquation {
  CTerm lhs, rhs;
  std::size_t nvars;
  std::vector<bool> uses;  // per operation
};

std::vector<CEquation> compile_all(const std::vector<Equation>& eqs, const Signature& sig) {
  std::vector<CEquation> out;
  for (const auto& e : eqs) {
    auto vars = e.variables();
    CEquation c{compile(e.lhs, sig, vars), compile(e.rhs, sig, vars), vars.size(), {}};
    for (const auto& op : sig.ops()) c.uses.push_back(e.lhs.mentions(op.name) || e.rhs.mentions(op.name));
    out.push_back(std::move(c));
  }
  return out;
}

// False iff some fully defined instance has differing sides.
bool consistent(const CEquation& e, const std::vector<std::vector<std::size_t>>& tables, std::size_t n) {
  std::vector<std::size_t> env(e.nvars, 0);
  if (n == 0 && e.nvars > 0) return true;
  while (true) {
    auto l = eval_idx(e.lhs, tables, n, env);
    if (l != kUnset) {
      auto r = eval_idx(e.rhs, tables, n, env);
      if (r != kUnset && l != r) return false;
    }
    std::size_t i = 0;
    while (i < env.size() && ++env[i] == n) env[i++] = 0;
    if (i == env.size()) return true;
  }
}

}  // namespace

Report check_equations(const AlgebraModel& m, const std::vector<Equation>& eqs) {
  Report r;
  r.law = "equations";
  const std::size_t n = m.carrier().size();
  for (const auto& eq : eqs) {
    auto vars = eq.variables();
    if (n == 0 && !vars.empty()) continue;
    std::vector<std::size_t> env(vars.size(), 0);
    while (true) {
      Environment named;
      for (std::size_t i = 0; i < vars.size(); ++i) named.emplace(vars[i], m.carrier()[env[i]]);
      auto l = eval_term(m, eq.lhs, named);
      auto rv = eval_term(m, eq.rhs, named);
      ++r.checked;
      if (!(l == rv)) {
        std::string shown;
        for (const auto& [k, v] : named) shown += (shown.empty() ? "" : ", ") + k + "=" + v.to_string();
        r.fail({eq.to_string(), "{" + shown + "}", l.to_string(), rv.to_string()});
        return r;
      }
      // lexicographic: the last variable varies fastest
      std::size_t i = env.size();
      while (i > 0 && ++env[i - 1] == n) env[--i] = 0;
      if (i == 0) break;
    }
  }
  return r;
}

bool is_model_homomorphism(const AlgebraModel& a, const AlgebraModel& b, const FinFunction& f) {
  if (!(f.dom() == a.carrier()) || !(f.cod() == b.carrier()))
    throw DomainMismatch("homomorphism " + f.to_string() + " does not match the carriers");
  if (!a.signature().same_symbols(b.signature())) throw DomainMismatch("models over different signatures");
  const std::size_t n = a.carrier().size();
  for (const auto& op : a.signature().ops()) {
    std::vector<Element> args(static_cast<std::size_t>(op.arity));
    std::size_t total = ipow(n, op.arity);
    for (std::size_t idx = 0; idx < total; ++idx) {
      auto rest = idx;
      for (int k = op.arity - 1; k >= 0; --k) {
        args[static_cast<std::size_t>(k)] = a.carrier()[rest % n];
        rest /= n;
      }
      std::vector<Element> mapped;
      for (const auto& x : args) mapped.push_back(f(x));
      if (!(f(a.apply(op.name, args)) == b.apply(op.name, mapped))) return false;
    }
  }
  return true;
}

std::vector<AlgebraModel> enumerate_models(const Theory& th, const FinSet& carrier) {
  const auto& sig = th.signature;
  const std::size_t n = carrier.size();
  auto eqs = compile_all(th.equations, sig);
  std::vector<std::vector<std::size_t>> tables;
  std::vector<std::pair<std::size_t, std::size_t>> slots;  // (op, entry)
  for (std::size_t i = 0; i < sig.ops().size(); ++i) {
    tables.emplace_back(ipow(n, sig.ops()[i].arity), kUnset);
    for (std::size_t k = 0; k < tables.back().size(); ++k) slots.emplace_back(i, k);
  }
  for (const auto& e : eqs)
    if (!std::any_of(e.uses.begin(), e.uses.end(), [](bool b) { return b; }) && !consistent(e, tables, n)) return {};
  std::vector<AlgebraModel> out;
  std::function<void(std::size_t)> fill = [&](std::size_t s) {
    if (s == slots.size()) {
      out.emplace_back(carrier, sig, tables);
      return;
    }
    auto [op, entry] = slots[s];
    for (std::size_t v = 0; v < n; ++v) {
      tables[op][entry] = v;
      bool ok = true;
      for (const auto& e : eqs)
        if (e.uses[op] && !consistent(e, tables, n)) {
          ok = false;
          break;
        }
      if (ok) fill(s + 1);
    }
    tables[op][entry] = kUnset;
  };
  fill(0);
  return out;
}

std::vector<Rational> convex_grid(int n) {
  std::set<Rational> g;
  for (int d = 2; d <= n; ++d)
    for (int k = 1; k < d; ++k) g.insert(Rational(k, d));
  return {g.begin(), g.end()};
}

std::string convex_op(const Rational& p) { return "+[" + to_string(p) + "]"; }

std::pair<Rational, Rational> skew_parameters(const Rational& p, const Rational& q) {
  auto pq = p * q;
  if (pq == Rational(1)) throw InvariantViolation("skew associativity needs pq < 1");
  return {pq, p * (Rational(1) - q) / (Rational(1) - pq)};
}

namespace {

Term v(const char* name) { return Term::var(name); }
Term ap(const std::string& op, std::vector<Term> args = {}) { return Term::app(op, std::move(args)); }
Term abar(Term t) { return ap("abar", {std::move(t)}); }

bool in_grid(const std::vector<Rational>& grid, const Rational& p) {
  return std::binary_search(grid.begin(), grid.end(), p);
}

void add_convex_core(Theory& th, const std::vector<Rational>& grid, bool with_abar) {
  auto x = v("x"), y = v("y"), z = v("z");
  for (const auto& p : grid) {
    auto op = convex_op(p);
    if (with_abar) {
      th.equations.push_back({abar(ap(op, {x, y})), ap(op, {x, y})});
      th.equations.push_back({ap(op, {abar(x), abar(y)}), ap(op, {x, y})});
      th.equations.push_back({ap(op, {x, x}), abar(x)});
    } else {
      th.equations.push_back({ap(op, {x, x}), x});
    }
    th.equations.push_back({ap(op, {x, y}), ap(convex_op(Rational(1) - p), {y, x})});
  }
  for (const auto& p : grid)
    for (const auto& q : grid) {
      auto [pq, r] = skew_parameters(p, q);
      if (!in_grid(grid, pq) || !in_grid(grid, r)) continue;
      th.equations.push_back(
          {ap(convex_op(p), {ap(convex_op(q), {x, y}), z}), ap(convex_op(pq), {x, ap(convex_op(r), {y, z})})});
    }
}

void add_convex_ops(Theory& th, const std::vector<Rational>& grid) {
  for (const auto& p : grid) th.signature.add(convex_op(p), 2);
}

}  // namespace

Theory maybe_semifree_theory() {
  Theory th;
  th.signature.add("abar", 1);
  th.signature.add("pt", 0);
  th.equations.push_back({abar(abar(v("x"))), abar(v("x"))});
  th.equations.push_back({abar(ap("pt")), ap("pt")});
  return th;
}

Theory semigroup_semifree_theory() {
  Theory th;
  th.signature.add("abar", 1);
  th.signature.add("mul", 2);
  auto x = v("x"), y = v("y"), z = v("z");
  th.equations.push_back({abar(abar(x)), abar(x)});
  th.equations.push_back({abar(ap("mul", {x, y})), ap("mul", {x, y})});
  th.equations.push_back({ap("mul", {abar(x), abar(y)}), ap("mul", {x, y})});
  th.equations.push_back({ap("mul", {ap("mul", {x, y}), z}), ap("mul", {x, ap("mul", {y, z})})});
  return th;
}

Theory convex_semifree_theory(const std::vector<Rational>& grid) {
  Theory th;
  th.signature.add("abar", 1);
  add_convex_ops(th, grid);
  th.equations.push_back({abar(abar(v("x"))), abar(v("x"))});
  add_convex_core(th, grid, true);
  return th;
}

Theory pointed_set_theory() {
  Theory th;
  th.signature.add("pt", 0);
  return th;
}

Theory semigroup_theory() {
  Theory th;
  th.signature.add("mul", 2);
  auto x = v("x"), y = v("y"), z = v("z");
  th.equations.push_back({ap("mul", {ap("mul", {x, y}), z}), ap("mul", {x, ap("mul", {y, z})})});
  return th;
}

Theory semilattice_theory() {
  Theory th;
  th.signature.add("join", 2);
  th.signature.add("bot", 0);
  auto x = v("x"), y = v("y"), z = v("z");
  th.equations.push_back({ap("join", {ap("join", {x, y}), z}), ap("join", {x, ap("join", {y, z})})});
  th.equations.push_back({ap("join", {x, y}), ap("join", {y, x})});
  th.equations.push_back({ap("join", {x, x}), x});
  th.equations.push_back({ap("join", {x, ap("bot")}), x});
  return th;
}

Theory convex_theory(const std::vector<Rational>& grid) {
  Theory th;
  add_convex_ops(th, grid);
  add_convex_core(th, grid, false);
  return th;
}

Theory conjecture_signature(const Theory& base) {
  if (base.signature.contains("abar")) throw InvariantViolation("the base theory already uses abar");
  Theory th;
  th.signature.add("abar", 1);
  for (const auto& op : base.signature.ops()) th.signature.add(op.name, op.arity);
  th.equations.push_back({abar(v("x")).substitute([](const std::string&) { return abar(Term::var("x")); }),
                          abar(v("x"))});
  for (const auto& op : base.signature.ops()) {
    std::vector<Term> xs, bars;
    for (int i = 1; i <= op.arity; ++i) {
      xs.push_back(Term::var("x" + std::to_string(i)));
      bars.push_back(abar(xs.back()));
    }
    th.equations.push_back({abar(ap(op.name, xs)), ap(op.name, xs)});
    if (op.arity > 0) th.equations.push_back({ap(op.name, xs), ap(op.name, bars)});
  }
  auto bar_var = [](const std::string& x) { return abar(Term::var(x)); };
  for (const auto& eq : base.equations) th.equations.push_back({eq.lhs.substitute(bar_var), eq.rhs.substitute(bar_var)});
  return th;
}

Report compare_theories(const Theory& a, const Theory& b, std::size_t max_size) {
  if (!a.signature.same_symbols(b.signature)) throw DomainMismatch("theories over different signatures");
  Report ab, ba;
  ab.law = "models of the first satisfy the second";
  ba.law = "models of the second satisfy the first";
  for (std::size_t n = 0; n <= max_size; ++n) {
    auto carrier = probe_set(n);
    for (const auto& m : enumerate_models(a, carrier)) {
      auto r = check_equations(m, b.equations);
      if (r.counterexample) r.counterexample->context += " in " + m.to_string();
      absorb(ab, r);
    }
    for (const auto& m : enumerate_models(b, carrier)) {
      auto r = check_equations(m, a.equations);
      if (r.counterexample) r.counterexample->context += " in " + m.to_string();
      absorb(ba, r);
    }
  }
  return Report::all_of("same models on carriers of size <= " + std::to_string(max_size), {ab, ba});
}

namespace {

Element one(const AlgebraModel& m, const char* op, const Element& x) {
  Element args[] = {x};
  return m.apply(op, args);
}

Element two(const AlgebraModel& m, const std::string& op, const Element& x, const Element& y) {
  Element args[] = {x, y};
  return m.apply(op, args);
}

void require_model(const AlgebraModel& m, const Theory& th, const char* what) {
  if (!m.signature().same_symbols(th.signature)) throw DomainMismatch(std::string("model is not over the ") + what);
  auto r = check_equations(m, th.equations);
  if (!r.pass) throw ValidityError(std::string("not a model of the ") + what + ":\n" + r.render());
}

void require_semialgebra(const Monad& m, const Semialgebra& a, const Bound& b) {
  auto r = check_semialgebra(m, a, b);
  if (!r.pass) throw ValidityError("not a " + m.name() + "-semialgebra:\n" + r.render());
}

}  // namespace

AlgebraModel maybe_to_model(const Semialgebra& a, const Bound& b) {
  require_semialgebra(*builtin("maybe"), a, b);
  return AlgebraModel::tabulate(a.carrier(), maybe_semifree_theory().signature,
                                [&](const std::string& op, std::span<const Element> xs) {
                                  return op == "abar" ? a(Element::just(xs[0])) : a(Element::nothing());
                                });
}

Semialgebra model_to_maybe(const AlgebraModel& m) {
  require_model(m, maybe_semifree_theory(), "maybe semifree theory");
  std::vector<std::pair<Element, Element>> table;
  for (const auto& x : m.carrier()) table.emplace_back(Element::just(x), one(m, "abar", x));
  table.emplace_back(Element::nothing(), m.apply("pt", {}));
  return Semialgebra::from_table(m.carrier(), table);
}

AlgebraModel semigroup_to_model(const Semialgebra& a, const Bound& b) {
  if (b.max_word_len < 2) throw InvariantViolation("reading off the product needs words of length 2");
  require_semialgebra(*builtin("nelist"), a, b);
  return AlgebraModel::tabulate(a.carrier(), semigroup_semifree_theory().signature,
                                [&](const std::string&, std::span<const Element> xs) {
                                  return a(Element::word({xs.begin(), xs.end()}));
                                });
}

Element fold_product(const AlgebraModel& m, std::span<const Element> xs) {
  if (xs.empty()) throw InvariantViolation("empty product");
  auto acc = xs[0];
  for (std::size_t i = 1; i < xs.size(); ++i) acc = two(m, "mul", acc, xs[i]);
  return acc;
}

Semialgebra model_to_semigroup(const AlgebraModel& m) {
  require_model(m, semigroup_semifree_theory(), "semigroup semifree theory");
  return Semialgebra::from_callback(m.carrier(), [m](const Element& w) {
    if (!w.is(Kind::Word)) throw InvariantViolation(w.to_string() + " is not a word");
    std::vector<Element> bars;
    for (const auto& x : w.children()) bars.push_back(one(m, "abar", x));
    return fold_product(m, bars);
  });
}

AlgebraModel dist_to_model(const Semialgebra& a, const std::vector<Rational>& grid) {
  auto r = check_grid_semialgebra(a, grid);
  if (!r.pass) throw ValidityError("not a dist-semialgebra on the grid:\n" + r.render());
  return AlgebraModel::tabulate(a.carrier(), convex_semifree_theory(grid).signature,
                                [&](const std::string& op, std::span<const Element> xs) {
                                  if (op == "abar") return a(Element::dist({{xs[0], Rational(1)}}));
                                  auto p = parse_rational(op.substr(2, op.size() - 3));
                                  return a(Element::dist({{xs[0], p}, {xs[1], Rational(1) - p}}));
                                });
}

Element fold_convex(const AlgebraModel& m, std::span<const std::pair<Element, Rational>> terms) {
  if (terms.empty()) throw InvariantViolation("empty convex combination");
  auto acc = terms[0].first;
  auto w = terms[0].second;
  for (std::size_t i = 1; i < terms.size(); ++i) {
    auto next = w + terms[i].second;
    auto s = w / next;
    auto op = convex_op(s);
    if (!m.signature().contains(op)) throw OutOfReach("weight " + to_string(s) + " is off the grid");
    acc = two(m, op, acc, terms[i].first);
    w = next;
  }
  if (w != Rational(1)) throw InvariantViolation("convex weights sum to " + to_string(w));
  return acc;
}

Semialgebra model_to_dist(const AlgebraModel& m, const std::vector<Rational>& grid) {
  require_model(m, convex_semifree_theory(grid), "convex semifree theory");
  return Semialgebra::from_callback(m.carrier(), [m](const Element& d) {
    if (!d.is(Kind::Dist)) throw InvariantViolation(d.to_string() + " is not a distribution");
    // support is already merged, so equal outcomes are combined before folding
    std::vector<std::pair<Element, Rational>> terms;
    auto xs = d.children();
    auto ws = d.weights();
    for (std::size_t i = 0; i < xs.size(); ++i) terms.emplace_back(one(m, "abar", xs[i]), ws[i]);
    return fold_convex(m, terms);
  });
}

Semialgebra restrict_to(const Monad& m, const Semialgebra& a, const Bound& b) {
  std::vector<std::pair<Element, Element>> table;
  for (const auto& e : m.enumerate(a.carrier(), b)) {
    try {
      table.emplace_back(e, a(e));
    } catch (const OutOfReach&) {
    }
  }
  return Semialgebra::from_table(a.carrier(), table);
}

Report check_semigroup_lemma(const AlgebraModel& m, std::size_t n) {
  std::vector<Element> tuples;  // words stand for n-tuples
  FinSet x = m.carrier();
  if (!x.empty()) {
    std::vector<std::size_t> idx(n, 0);
    while (true) {
      std::vector<Element> letters;
      for (auto i : idx) letters.push_back(x[i]);
      tuples.push_back(Element::word(std::move(letters)));
      std::size_t i = n;
      while (i > 0 && ++idx[i - 1] == x.size()) idx[--i] = 0;
      if (i == 0) break;
    }
  }
  auto prod = [&](const Element& w) { return fold_product(m, w.children()); };
  auto bar_prod = [&](const Element& w) {
    std::vector<Element> bars;
    for (const auto& c : w.children()) bars.push_back(one(m, "abar", c));
    return fold_product(m, bars);
  };
  auto left = check_paths("abar x1...abar xn = x1...xn", tuples, bar_prod, prod);
  auto right = check_paths(
      "x1...xn = abar(x1...xn)", tuples, prod, [&](const Element& w) { return one(m, "abar", prod(w)); });
  return Report::all_of("generalized product lemma, n = " + std::to_string(n), {std::move(left), std::move(right)});
}

Report check_convex_lemma(const AlgebraModel& m, const std::vector<Rational>& grid, std::size_t n) {
  Report r;
  r.law = "generalized convex lemma, n = " + std::to_string(n);
  const auto& x = m.carrier();
  if (x.empty() || n == 0) return r;
  std::vector<std::vector<Rational>> weights;
  std::vector<Rational> cur;
  std::function<void(Rational)> gen = [&](Rational left) {
    if (cur.size() + 1 == n) {
      if (in_grid(grid, left) || (n == 1 && left == Rational(1))) {
        cur.push_back(left);
        weights.push_back(cur);
        cur.pop_back();
      }
      return;
    }
    for (const auto& p : grid)
      if (p < left) {
        cur.push_back(p);
        gen(left - p);
        cur.pop_back();
      }
  };
  gen(Rational(1));
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    for (const auto& w : weights) {
      std::vector<std::pair<Element, Rational>> plain, barred;
      std::string shown;
      for (std::size_t i = 0; i < n; ++i) {
        plain.emplace_back(x[idx[i]], w[i]);
        barred.emplace_back(one(m, "abar", x[idx[i]]), w[i]);
        shown += (i ? " + " : "") + to_string(w[i]) + "*" + x[idx[i]].to_string();
      }
      try {
        auto mid = fold_convex(m, plain);
        auto lhs = one(m, "abar", mid);
        auto rhs = fold_convex(m, barred);
        ++r.checked;
        if (!(lhs == mid) || !(mid == rhs)) {
          r.fail({"", shown, lhs.to_string() + " / " + mid.to_string(), rhs.to_string()});
          return r;
        }
      } catch (const OutOfReach&) {
        ++r.skipped;
      }
    }
    std::size_t i = n;
    while (i > 0 && ++idx[i - 1] == x.size()) idx[--i] = 0;
    if (i == 0) break;
  }
  return r;
}

namespace {

void weighted_supports(const std::vector<Element>& pool, const std::vector<Rational>& grid, std::size_t max_support,
                       std::vector<Element>& out) {
  std::vector<std::pair<Element, Rational>> cur;
  std::function<void(std::size_t, Rational)> rec = [&](std::size_t from, Rational left) {
    if (left == Rational(0)) {
      out.push_back(Element::dist(cur));
      return;
    }
    if (cur.size() == max_support) return;
    for (std::size_t i = from; i < pool.size(); ++i) {
      if (cur.empty() && left == Rational(1)) {
        cur.emplace_back(pool[i], Rational(1));
        rec(i + 1, Rational(0));
        cur.pop_back();
      }
      for (const auto& p : grid)
        if (p < left || (p == left && !cur.empty())) {
          cur.emplace_back(pool[i], p);
          rec(i + 1, left - p);
          cur.pop_back();
        }
    }
  };
  rec(0, Rational(1));
}

}  // namespace

std::vector<Element> grid_distributions(const FinSet& x, const std::vector<Rational>& grid) {
  std::vector<Element> out;
  weighted_supports(x.elements(), grid, x.size(), out);
  return FinSet::of_unique(std::move(out)).elements();
}

std::vector<Element> grid_towers(const FinSet& x, const std::vector<Rational>& grid, std::size_t max_support) {
  std::vector<Element> out;
  weighted_supports(grid_distributions(x, grid), grid, max_support, out);
  return FinSet::of_unique(std::move(out)).elements();
}

Report check_grid_semialgebra(const Semialgebra& a, const std::vector<Rational>& grid, std::size_t max_support) {
  auto dist = builtin("dist");
  auto domain = grid_distributions(a.carrier(), grid);
  Report images;
  images.law = "a lands in the carrier";
  for (const auto& d : domain) {
    try {
      auto v = a(d);
      ++images.checked;
      if (!a.carrier().contains(v)) {
        images.fail({"", d.to_string(), v.to_string(), "outside " + a.carrier().to_string()});
        break;
      }
    } catch (const OutOfReach&) {
      ++images.skipped;
    }
  }
  // Off-grid intermediate values make the table throw OutOfReach: skipped.
  auto am = a.as_map();
  auto assoc = check_paths(
      "a . Da = a . mu", grid_towers(a.carrier(), grid, max_support),
      [&](const Element& e) { return a(dist->fmap(am, e)); }, [&](const Element& e) { return a(dist->mult(e)); });
  return Report::all_of("dist-semialgebra on the grid", {std::move(images), std::move(assoc)});
}

std::vector<Semialgebra> grid_semialgebras(const FinSet& x, const std::vector<Rational>& grid,
                                           std::size_t max_support) {
  auto domain = grid_distributions(x, grid);
  std::vector<Semialgebra> out;
  if (x.empty() && !domain.empty()) return out;
  for (const auto& f : all_functions(FinSet::of_unique(domain), x)) {
    std::vector<std::pair<Element, Element>> table;
    for (std::size_t i = 0; i < f.dom().size(); ++i) table.emplace_back(f.dom()[i], f.images()[i]);
    auto a = Semialgebra::from_table(x, table);
    if (check_grid_semialgebra(a, grid, max_support).pass) out.push_back(std::move(a));
  }
  return out;
}

namespace {

// One presentation packaged as data for the generic iso check.
struct Case {
  Theory theory;
  std::vector<Semialgebra> semialgebras;
  std::function<AlgebraModel(const Semialgebra&)> to_model;
  std::function<Semialgebra(const AlgebraModel&)> to_semialgebra;  // table-backed, same domain
  std::function<Report(const Semialgebra&)> valid;
  std::function<Report(const Semialgebra&, const Semialgebra&, const FinFunction&)> hom;
  std::vector<Element> domain;
};

bool same_tables(const Semialgebra& a, const Semialgebra& b, const std::vector<Element>& domain) {
  for (const auto& e : domain) {
    std::optional<Element> x, y;
    try {
      x = a(e);
    } catch (const OutOfReach&) {
    }
    try {
      y = b(e);
    } catch (const OutOfReach&) {
    }
    if (x != y) return false;
  }
  return true;
}

Semialgebra table_on(const Semialgebra& a, const std::vector<Element>& domain) {
  std::vector<std::pair<Element, Element>> table;
  for (const auto& e : domain) {
    try {
      table.emplace_back(e, a(e));
    } catch (const OutOfReach&) {
    }
  }
  return Semialgebra::from_table(a.carrier(), table);
}

Case make_case(const std::string& monad, const FinSet& x, const PresentationOptions& opt) {
  Case c;
  if (monad == "maybe") {
    Bound b;
    auto maybe = builtin("maybe");
    c.theory = maybe_semifree_theory();
    c.semialgebras = enumerate_semialgebras(*maybe, x, b);
    c.domain = maybe->enumerate(x, b);
    c.to_model = [b](const Semialgebra& a) { return maybe_to_model(a, b); };
    c.to_semialgebra = [](const AlgebraModel& m) { return model_to_maybe(m); };
    c.valid = [maybe, b](const Semialgebra& a) { return check_semialgebra(*maybe, a, b); };
    c.hom = [maybe, b](const Semialgebra& a, const Semialgebra& d, const FinFunction& f) {
      return check_homomorphism(*maybe, a, d, f, b);
    };
    return c;
  }
  if (monad == "nelist") {
    Bound b;
    b.max_word_len = opt.word_len;
    auto nelist = builtin("nelist");
    c.theory = semigroup_semifree_theory();
    c.semialgebras = enumerate_semialgebras(*nelist, x, b);
    c.domain = nelist->enumerate(x, b);
    c.to_model = [b](const Semialgebra& a) { return semigroup_to_model(a, b); };
    c.to_semialgebra = [nelist, b](const AlgebraModel& m) { return restrict_to(*nelist, model_to_semigroup(m), b); };
    c.valid = [nelist, b](const Semialgebra& a) { return check_semialgebra(*nelist, a, b); };
    c.hom = [nelist, b](const Semialgebra& a, const Semialgebra& d, const FinFunction& f) {
      return check_homomorphism(*nelist, a, d, f, b);
    };
    return c;
  }
  if (monad == "dist") {
    auto grid = convex_grid(opt.grid);
    auto dist = builtin("dist");
    c.theory = convex_semifree_theory(grid);
    c.semialgebras = grid_semialgebras(x, grid);
    c.domain = grid_distributions(x, grid);
    auto domain = c.domain;
    c.to_model = [grid](const Semialgebra& a) { return dist_to_model(a, grid); };
    c.to_semialgebra = [grid, domain](const AlgebraModel& m) { return table_on(model_to_dist(m, grid), domain); };
    c.valid = [grid](const Semialgebra& a) { return check_grid_semialgebra(a, grid); };
    c.hom = [dist, domain](const Semialgebra& a, const Semialgebra& d, const FinFunction& f) {
      return check_paths(
          "f . a = b . Df", domain, [&](const Element& e) { return f(a(e)); },
          [&](const Element& e) { return d(dist->fmap(f.as_map(), e)); }, f.to_string());
    };
    return c;
  }
  throw UnknownMonad("no presentation for '" + monad + "'");
}

}  // namespace

Report check_presentation_iso(const std::string& monad, const FinSet& carrier, const PresentationOptions& opt) {
  auto c = make_case(monad, carrier, opt);
  auto models = enumerate_models(c.theory, carrier);

  Report counts;
  counts.law = "equal counts";
  counts.checked = 1;
  counts.note = std::to_string(models.size()) + " models, " + std::to_string(c.semialgebras.size()) + " semialgebras";
  if (models.size() != c.semialgebras.size())
    counts.fail({"", carrier.to_string(), std::to_string(models.size()), std::to_string(c.semialgebras.size())});

  Report from_models, from_semis, model_trip, semi_trip, cover, homs;
  from_models.law = "models give semialgebras";
  from_semis.law = "semialgebras give models";
  model_trip.law = "model -> semialgebra -> model is the identity";
  semi_trip.law = "semialgebra -> model -> semialgebra is the identity";
  cover.law = "every model is hit exactly once";
  homs.law = "homomorphisms correspond";

  std::vector<Semialgebra> induced;
  for (const auto& m : models) {
    ++from_models.checked;
    ++model_trip.checked;
    try {
      auto a = c.to_semialgebra(m);
      auto v = c.valid(a);
      if (!v.pass) {
        from_models.fail({m.to_string(), v.counterexample ? v.counterexample->input : "", "", ""});
        continue;
      }
      if (!(c.to_model(a) == m)) model_trip.fail({"", m.to_string(), c.to_model(a).to_string(), ""});
      induced.push_back(std::move(a));
    } catch (const ValidityError& e) {
      from_models.fail({"", m.to_string(), "rejected", e.what()});
    }
  }
  std::vector<AlgebraModel> images;
  for (const auto& a : c.semialgebras) {
    ++from_semis.checked;
    ++semi_trip.checked;
    try {
      auto m = c.to_model(a);
      auto r = check_equations(m, c.theory.equations);
      if (!r.pass) {
        from_semis.fail({"", m.to_string(), r.counterexample->context, r.counterexample->input});
        continue;
      }
      if (!same_tables(c.to_semialgebra(m), a, c.domain)) semi_trip.fail({"", m.to_string(), "", ""});
      images.push_back(std::move(m));
    } catch (const ValidityError& e) {
      from_semis.fail({"", "semialgebra", "rejected", e.what()});
    }
  }
  {
    std::vector<std::string> lhs, rhs;
    for (const auto& m : images) lhs.push_back(m.to_string());
    for (const auto& m : models) rhs.push_back(m.to_string());
    std::sort(lhs.begin(), lhs.end());
    std::sort(rhs.begin(), rhs.end());
    cover.checked = lhs.size();
    if (lhs != rhs || std::adjacent_find(lhs.begin(), lhs.end()) != lhs.end())
      cover.fail({"", carrier.to_string(), std::to_string(lhs.size()) + " images", std::to_string(rhs.size()) + " models"});
  }
  if (images.size() == c.semialgebras.size()) {
    for (std::size_t i = 0; i < c.semialgebras.size() && homs.pass; ++i)
      for (std::size_t j = 0; j < c.semialgebras.size() && homs.pass; ++j)
        for (const auto& f : all_functions(carrier, carrier)) {
          ++homs.checked;
          bool semi = c.hom(c.semialgebras[i], c.semialgebras[j], f).pass;
          bool model = is_model_homomorphism(images[i], images[j], f);
          if (semi != model) {
            homs.fail({images[i].to_string() + " -> " + images[j].to_string(), f.to_string(),
                       semi ? "semialgebra hom" : "not a semialgebra hom", model ? "model hom" : "not a model hom"});
            break;
          }
        }
  }
  auto r = Report::all_of(monad + "-semialgebras on " + carrier.to_string() + " vs models",
                          {counts, from_models, from_semis, model_trip, semi_trip, cover, homs});
  r.note = std::to_string(c.semialgebras.size()) + " ↔ " + std::to_string(models.size()) + " bijection";
  if (!r.pass) r.note = std::to_string(c.semialgebras.size()) + " semialgebras, " + std::to_string(models.size()) +
                        " models: no bijection";
  return r;
}

}  // namespace semifree
