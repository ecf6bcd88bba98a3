#include "semifree/element.hpp"

#include "semifree/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace semifree {

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace {

std::int64_t parse_int(std::string_view s) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
    throw ParseError("bad integer '" + std::string(s) + "'");
  return v;
}

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

bool label_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '*' || c == '\'' ||
         c == '.' || c == '-';
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  auto den = parse_int(text.substr(slash + 1));
  if (den == 0) throw ParseError("zero denominator");
  return Rational(parse_int(text.substr(0, slash)), den);
}

struct Element::Node {
  Kind kind = Kind::Nothing;
  std::string label;
  std::vector<Element> kids;
  std::vector<Rational> weights;
  std::size_t hash = 0;
};

Element::Element() : Element(Element::nothing()) {}

Element::Element(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

namespace {

std::size_t node_hash(const Element::Node& n) {
  std::size_t h = std::hash<int>{}(static_cast<int>(n.kind));
  h = mix(h, std::hash<std::string>{}(n.label));
  for (const auto& k : n.kids) h = mix(h, k.hash());
  for (const auto& w : n.weights) {
    h = mix(h, std::hash<std::int64_t>{}(w.numerator()));
    h = mix(h, std::hash<std::int64_t>{}(w.denominator()));
  }
  return h;
}

}  // namespace

Element Element::base(std::string label) {
  if (label.empty() || label == "Nothing" ||
      !std::all_of(label.begin(), label.end(), label_char))
    throw InvariantViolation("invalid base label '" + label + "'");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Base;
  n->label = std::move(label);
  n->hash = node_hash(*n);
  return Element(std::move(n));
}

Element Element::nothing() {
  static const Element e = [] {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Nothing;
    n->hash = node_hash(*n);
    return Element(std::shared_ptr<const Node>(std::move(n)));
  }();
  return e;
}

Element Element::unary(Kind k, Element inner) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->kids.push_back(std::move(inner));
  n->hash = node_hash(*n);
  return Element(std::move(n));
}

Element Element::just(Element inner) { return unary(Kind::Just, std::move(inner)); }
Element Element::left(Element inner) { return unary(Kind::L, std::move(inner)); }
Element Element::right(Element inner) { return unary(Kind::R, std::move(inner)); }

Element Element::word(std::vector<Element> letters) {
  if (letters.empty()) throw InvariantViolation("words must be non-empty");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Word;
  n->kids = std::move(letters);
  n->hash = node_hash(*n);
  return Element(std::move(n));
}

Element Element::subset(std::vector<Element> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  auto n = std::make_shared<Node>();
  n->kind = Kind::SubSet;
  n->kids = std::move(members);
  n->hash = node_hash(*n);
  return Element(std::move(n));
}

Element Element::dist(std::vector<std::pair<Element, Rational>> weighted) {
  std::sort(weighted.begin(), weighted.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  auto n = std::make_shared<Node>();
  n->kind = Kind::Dist;
  Rational total = 0;
  for (auto& [e, w] : weighted) {
    if (w < Rational(0)) throw InvariantViolation("negative weight in distribution");
    total += w;
    if (w == Rational(0)) continue;
    if (!n->kids.empty() && n->kids.back() == e) {
      n->weights.back() += w;
    } else {
      n->kids.push_back(std::move(e));
      n->weights.push_back(w);
    }
  }
  if (total != Rational(1)) throw InvariantViolation("distribution weights sum to " + semifree::to_string(total));
  n->hash = node_hash(*n);
  return Element(std::move(n));
}

Kind Element::kind() const noexcept { return node_->kind; }

const std::string& Element::label() const {
  if (kind() != Kind::Base) throw InvariantViolation("label() on non-base element " + to_string());
  return node_->label;
}

const Element& Element::inner() const {
  if (kind() != Kind::Just && kind() != Kind::L && kind() != Kind::R)
    throw InvariantViolation("inner() on " + to_string());
  return node_->kids.front();
}

std::span<const Element> Element::children() const { return node_->kids; }

std::span<const Rational> Element::weights() const { return node_->weights; }

std::size_t Element::hash() const noexcept { return node_->hash; }

bool operator==(const Element& a, const Element& b) noexcept {
  if (a.node_ == b.node_) return true;
  if (a.node_->hash != b.node_->hash) return false;
  return (a <=> b) == 0;
}

std::strong_ordering operator<=>(const Element& a, const Element& b) noexcept {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (auto c = x.kind <=> y.kind; c != 0) return c;
  if (x.kind == Kind::Base) {
    // Numeric labels order numerically so probe sets {0..9,10,..} stay sorted.
    bool xn = !x.label.empty() && std::all_of(x.label.begin(), x.label.end(), ::isdigit);
    bool yn = !y.label.empty() && std::all_of(y.label.begin(), y.label.end(), ::isdigit);
    if (xn && yn && x.label.size() != y.label.size())
      return x.label.size() <=> y.label.size();
    if (xn != yn) return yn <=> xn;  // numbers first
    if (auto c = x.label.compare(y.label); c != 0) return c <=> 0;
    return std::strong_ordering::equal;
  }
  if (auto c = x.kids.size() <=> y.kids.size(); c != 0) return c;
  for (std::size_t i = 0; i < x.kids.size(); ++i)
    if (auto c = x.kids[i] <=> y.kids[i]; c != 0) return c;
  for (std::size_t i = 0; i < x.weights.size(); ++i) {
    if (x.weights[i] < y.weights[i]) return std::strong_ordering::less;
    if (y.weights[i] < x.weights[i]) return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

std::string Element::to_string() const {
  const auto& n = *node_;
  auto join = [&](char open, char close) {
    std::string s(1, open);
    for (std::size_t i = 0; i < n.kids.size(); ++i) {
      if (i) s += ',';
      if (n.kind == Kind::Dist) s += semifree::to_string(n.weights[i]) + ":";
      s += n.kids[i].to_string();
    }
    s += close;
    return s;
  };
  switch (n.kind) {
    case Kind::Base: return n.label;
    case Kind::Nothing: return "Nothing";
    case Kind::Just: return "Just(" + n.kids[0].to_string() + ")";
    case Kind::L: return "L(" + n.kids[0].to_string() + ")";
    case Kind::R: return "R(" + n.kids[0].to_string() + ")";
    case Kind::Word: return join('[', ']');
    case Kind::SubSet: return join('{', '}');
    case Kind::Dist: return join('<', '>');
  }
  return {};
}

namespace {

class Parser {
public:
  explicit Parser(std::string_view s) : s_(s) {}

  Element parse_all() {
    Element e = parse();
    if (pos_ != s_.size()) fail("trailing input");
    return e;
  }

private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("element '" + std::string(s_) + "': " + what + " at " + std::to_string(pos_));
  }

  bool eat(char c) {
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  std::string_view token() {
    auto start = pos_;
    while (pos_ < s_.size() && (label_char(s_[pos_]) || s_[pos_] == '/')) ++pos_;
    return s_.substr(start, pos_ - start);
  }

  std::vector<Element> list(char close) {
    std::vector<Element> out;
    if (eat(close)) return out;
    do out.push_back(parse());
    while (eat(','));
    expect(close);
    return out;
  }

  Element parse() {
    if (eat('[')) return Element::word(list(']'));
    if (eat('{')) return Element::subset(list('}'));
    if (eat('<')) {
      std::vector<std::pair<Element, Rational>> ws;
      do {
        auto w = token();
        expect(':');
        ws.emplace_back(parse(), parse_rational(w));
      } while (eat(','));
      expect('>');
      return Element::dist(std::move(ws));
    }
    auto tok = token();
    if (tok.empty()) fail("expected element");
    if (tok == "Nothing") return Element::nothing();
    if (eat('(')) {
      Element inner = parse();
      expect(')');
      if (tok == "Just") return Element::just(std::move(inner));
      if (tok == "L") return Element::left(std::move(inner));
      if (tok == "R") return Element::right(std::move(inner));
      fail("unknown constructor " + std::string(tok));
    }
    return Element::base(std::string(tok));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Element parse_element(std::string_view text) { return Parser(text).parse_all(); }

}  // namespace semifree
