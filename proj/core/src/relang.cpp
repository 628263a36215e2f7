#include "hsmc/relang.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "hsmc/error.hpp"

namespace hsmc {

// ---------------------------------------------------------------------------
// PropFormula

struct PropFormula::Node {
  Kind kind;
  std::string name;
  std::optional<PropId> index;
  std::optional<PropFormula> a;
  std::optional<PropFormula> b;
  std::size_t hash;
};

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

}  // namespace

PropFormula PropFormula::truth() {
  static const PropFormula t(std::make_shared<const Node>(Node{Kind::True, {}, {}, {}, {}, 0x11}));
  return t;
}

PropFormula PropFormula::falsity() {
  static const PropFormula f(std::make_shared<const Node>(Node{Kind::False, {}, {}, {}, {}, 0x22}));
  return f;
}

PropFormula PropFormula::atom(std::string name) {
  const std::size_t h = mix(0x33, std::hash<std::string>{}(name));
  return PropFormula(std::make_shared<const Node>(Node{Kind::Atom, std::move(name), {}, {}, {}, h}));
}

PropFormula PropFormula::negation(PropFormula f) {
  const std::size_t h = mix(0x44, f.hash());
  return PropFormula(std::make_shared<const Node>(Node{Kind::Not, {}, {}, std::move(f), {}, h}));
}

PropFormula PropFormula::conjunction(PropFormula a, PropFormula b) {
  const std::size_t h = mix(mix(0x55, a.hash()), b.hash());
  return PropFormula(std::make_shared<const Node>(Node{Kind::And, {}, {}, std::move(a), std::move(b), h}));
}

PropFormula PropFormula::disjunction(PropFormula a, PropFormula b) {
  const std::size_t h = mix(mix(0x66, a.hash()), b.hash());
  return PropFormula(std::make_shared<const Node>(Node{Kind::Or, {}, {}, std::move(a), std::move(b), h}));
}

PropFormula::Kind PropFormula::kind() const noexcept { return node_->kind; }
const std::string& PropFormula::name() const noexcept { return node_->name; }
std::optional<PropId> PropFormula::index() const noexcept { return node_->index; }
const PropFormula& PropFormula::lhs() const { return *node_->a; }
const PropFormula& PropFormula::rhs() const { return *node_->b; }
std::size_t PropFormula::hash() const noexcept { return node_->hash; }

PropFormula PropFormula::bind(const std::vector<std::string>& props) const {
  switch (kind()) {
    case Kind::True:
    case Kind::False:
      return *this;
    case Kind::Atom: {
      const auto it = std::find(props.begin(), props.end(), name());
      if (it == props.end()) throw PreconditionError("undeclared proposition '" + name() + "'");
      Node n = *node_;
      n.index = static_cast<PropId>(it - props.begin());
      return PropFormula(std::make_shared<const Node>(std::move(n)));
    }
    case Kind::Not:
      return negation(lhs().bind(props));
    case Kind::And:
      return conjunction(lhs().bind(props), rhs().bind(props));
    case Kind::Or:
      return disjunction(lhs().bind(props), rhs().bind(props));
  }
  return *this;
}

bool PropFormula::is_bound() const noexcept {
  switch (kind()) {
    case Kind::True:
    case Kind::False:
      return true;
    case Kind::Atom:
      return index().has_value();
    case Kind::Not:
      return lhs().is_bound();
    case Kind::And:
    case Kind::Or:
      return lhs().is_bound() && rhs().is_bound();
  }
  return false;
}

std::string PropFormula::to_string() const {
  // precedence: or 0, and 1, not/atom 2
  std::function<std::string(const PropFormula&, int)> go = [&](const PropFormula& f, int ctx) -> std::string {
    switch (f.kind()) {
      case Kind::True:
        return "true";
      case Kind::False:
        return "false";
      case Kind::Atom:
        return f.name();
      case Kind::Not:
        return "!" + go(f.lhs(), 2);
      case Kind::And: {
        std::string s = go(f.lhs(), 1) + " & " + go(f.rhs(), 2);
        return ctx > 1 ? "(" + s + ")" : s;
      }
      case Kind::Or: {
        std::string s = go(f.lhs(), 0) + " | " + go(f.rhs(), 1);
        return ctx > 0 ? "(" + s + ")" : s;
      }
    }
    return {};
  };
  return go(*this, 0);
}

bool operator==(const PropFormula& a, const PropFormula& b) noexcept {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case PropFormula::Kind::True:
    case PropFormula::Kind::False:
      return true;
    case PropFormula::Kind::Atom:
      return a.name() == b.name();
    case PropFormula::Kind::Not:
      return a.lhs() == b.lhs();
    case PropFormula::Kind::And:
    case PropFormula::Kind::Or:
      return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
  return false;
}

bool eval_prop(const PropFormula& f, const PropSet& labels) {
  switch (f.kind()) {
    case PropFormula::Kind::True:
      return true;
    case PropFormula::Kind::False:
      return false;
    case PropFormula::Kind::Atom:
      if (!f.index()) throw PreconditionError("unbound proposition '" + f.name() + "'");
      return labels.contains(*f.index());
    case PropFormula::Kind::Not:
      return !eval_prop(f.lhs(), labels);
    case PropFormula::Kind::And:
      return eval_prop(f.lhs(), labels) && eval_prop(f.rhs(), labels);
    case PropFormula::Kind::Or:
      return eval_prop(f.lhs(), labels) || eval_prop(f.rhs(), labels);
  }
  return false;
}

// ---------------------------------------------------------------------------
// RegExpr

struct RegExpr::Node {
  Kind kind;
  std::optional<PropFormula> formula;
  std::optional<RegExpr> a;
  std::optional<RegExpr> b;
  std::size_t size;
  std::size_t tests;
  std::size_t hash;
};

RegExpr RegExpr::epsilon() {
  static const RegExpr e(std::make_shared<const Node>(Node{Kind::Epsilon, {}, {}, {}, 1, 0, 0x77}));
  return e;
}

RegExpr RegExpr::test(PropFormula f) {
  const std::size_t h = mix(0x88, f.hash());
  return RegExpr(std::make_shared<const Node>(Node{Kind::Test, std::move(f), {}, {}, 1, 1, h}));
}

RegExpr RegExpr::alt(RegExpr a, RegExpr b) {
  const std::size_t size = 1 + a.size() + b.size();
  const std::size_t tests = a.num_tests() + b.num_tests();
  const std::size_t h = mix(mix(0x99, a.hash()), b.hash());
  return RegExpr(std::make_shared<const Node>(Node{Kind::Union, {}, std::move(a), std::move(b), size, tests, h}));
}

RegExpr RegExpr::concat(RegExpr a, RegExpr b) {
  const std::size_t size = 1 + a.size() + b.size();
  const std::size_t tests = a.num_tests() + b.num_tests();
  const std::size_t h = mix(mix(0xaa, a.hash()), b.hash());
  return RegExpr(std::make_shared<const Node>(Node{Kind::Concat, {}, std::move(a), std::move(b), size, tests, h}));
}

RegExpr RegExpr::star(RegExpr a) {
  const std::size_t size = 1 + a.size();
  const std::size_t tests = a.num_tests();
  const std::size_t h = mix(0xbb, a.hash());
  return RegExpr(std::make_shared<const Node>(Node{Kind::Star, {}, std::move(a), {}, size, tests, h}));
}

RegExpr::Kind RegExpr::kind() const noexcept { return node_->kind; }
const PropFormula& RegExpr::formula() const { return *node_->formula; }
const RegExpr& RegExpr::lhs() const { return *node_->a; }
const RegExpr& RegExpr::rhs() const { return *node_->b; }
std::size_t RegExpr::size() const noexcept { return node_->size; }
std::size_t RegExpr::num_tests() const noexcept { return node_->tests; }
std::size_t RegExpr::hash() const noexcept { return node_->hash; }

RegExpr RegExpr::bind(const std::vector<std::string>& props) const {
  switch (kind()) {
    case Kind::Epsilon:
      return *this;
    case Kind::Test:
      return test(formula().bind(props));
    case Kind::Union:
      return alt(lhs().bind(props), rhs().bind(props));
    case Kind::Concat:
      return concat(lhs().bind(props), rhs().bind(props));
    case Kind::Star:
      return star(body().bind(props));
  }
  return *this;
}

RegExpr RegExpr::reversed() const {
  switch (kind()) {
    case Kind::Epsilon:
    case Kind::Test:
      return *this;
    case Kind::Union:
      return alt(lhs().reversed(), rhs().reversed());
    case Kind::Concat:
      return concat(rhs().reversed(), lhs().reversed());
    case Kind::Star:
      return star(body().reversed());
  }
  return *this;
}

std::string RegExpr::to_string() const {
  // precedence: union 0, concat 1, star 2, primary 3
  std::function<std::string(const RegExpr&, int)> go = [&](const RegExpr& r, int ctx) -> std::string {
    std::string s;
    int prec = 3;
    switch (r.kind()) {
      case Kind::Epsilon:
        return "eps";
      case Kind::Test: {
        const auto k = r.formula().kind();
        s = r.formula().to_string();
        const bool compound = k == PropFormula::Kind::And || k == PropFormula::Kind::Or;
        return compound && ctx > 0 ? "(" + s + ")" : s;
      }
      case Kind::Union:
        prec = 0;
        s = go(r.lhs(), 0) + " + " + go(r.rhs(), 1);
        break;
      case Kind::Concat:
        prec = 1;
        s = go(r.lhs(), 1) + " . " + go(r.rhs(), 2);
        break;
      case Kind::Star:
        prec = 2;
        s = go(r.body(), 3) + "*";
        break;
    }
    return prec < ctx ? "(" + s + ")" : s;
  };
  return go(*this, 0);
}

bool operator==(const RegExpr& a, const RegExpr& b) noexcept {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.kind() != b.kind() || a.size() != b.size()) return false;
  switch (a.kind()) {
    case RegExpr::Kind::Epsilon:
      return true;
    case RegExpr::Kind::Test:
      return a.formula() == b.formula();
    case RegExpr::Kind::Union:
    case RegExpr::Kind::Concat:
      return a.lhs() == b.lhs() && a.rhs() == b.rhs();
    case RegExpr::Kind::Star:
      return a.body() == b.body();
  }
  return false;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

enum class Tok { Ident, Eps, True, False, LParen, RParen, Plus, Dot, Star, Bang, Amp, Bar, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t column;
};

std::vector<Token> tokenize_regex(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t col = i + 1;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i + 1;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_' || text[j] == '\''))
        ++j;
      std::string word(text.substr(i, j - i));
      Tok k = Tok::Ident;
      if (word == "eps") k = Tok::Eps;
      else if (word == "true") k = Tok::True;
      else if (word == "false") k = Tok::False;
      out.push_back({k, std::move(word), col});
      i = j;
      continue;
    }
    Tok k;
    switch (c) {
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case '+': k = Tok::Plus; break;
      case '.': k = Tok::Dot; break;
      case '*': k = Tok::Star; break;
      case '!': k = Tok::Bang; break;
      case '&': k = Tok::Amp; break;
      case '|': k = Tok::Bar; break;
      default:
        throw ParseError("unexpected character '" + std::string(1, c) + "' at column " + std::to_string(col), col);
    }
    out.push_back({k, std::string(1, c), col});
    ++i;
  }
  out.push_back({Tok::End, "", text.size() + 1});
  return out;
}

class RegexParser {
 public:
  explicit RegexParser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  RegExpr parse() {
    if (peek().kind == Tok::End) throw ParseError("empty regular expression", peek().column);
    RegExpr r = parse_union();
    if (peek().kind != Tok::End) error("unexpected '" + peek().text + "'");
    return r;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }

  [[noreturn]] void error(const std::string& msg) const {
    const Token& t = peek();
    const std::string where =
        t.kind == Tok::End ? "at end of input" : "at column " + std::to_string(t.column);
    throw ParseError("syntax error " + where + ": " + msg, t.column);
  }

  RegExpr parse_union() {
    RegExpr r = parse_concat();
    while (peek().kind == Tok::Plus) {
      next();
      r = RegExpr::alt(r, parse_concat());
    }
    return r;
  }

  RegExpr parse_concat() {
    RegExpr r = parse_star();
    while (peek().kind == Tok::Dot) {
      next();
      r = RegExpr::concat(r, parse_star());
    }
    return r;
  }

  RegExpr parse_star() {
    RegExpr r = parse_or();
    while (peek().kind == Tok::Star) {
      next();
      r = RegExpr::star(r);
    }
    return r;
  }

  const PropFormula& as_prop(const RegExpr& r, std::size_t column) const {
    if (r.kind() != RegExpr::Kind::Test)
      throw ParseError("propositional operator applied to a non-propositional expression at column " +
                           std::to_string(column),
                       column);
    return r.formula();
  }

  RegExpr parse_or() {
    RegExpr r = parse_and();
    while (peek().kind == Tok::Bar) {
      const std::size_t col = next().column;
      RegExpr rhs = parse_and();
      r = RegExpr::test(PropFormula::disjunction(as_prop(r, col), as_prop(rhs, col)));
    }
    return r;
  }

  RegExpr parse_and() {
    RegExpr r = parse_not();
    while (peek().kind == Tok::Amp) {
      const std::size_t col = next().column;
      RegExpr rhs = parse_not();
      r = RegExpr::test(PropFormula::conjunction(as_prop(r, col), as_prop(rhs, col)));
    }
    return r;
  }

  RegExpr parse_not() {
    if (peek().kind == Tok::Bang) {
      const std::size_t col = next().column;
      RegExpr inner = parse_not();
      return RegExpr::test(PropFormula::negation(as_prop(inner, col)));
    }
    return parse_primary();
  }

  RegExpr parse_primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Ident:
        next();
        return RegExpr::test(PropFormula::atom(t.text));
      case Tok::True:
        next();
        return RegExpr::test(PropFormula::truth());
      case Tok::False:
        next();
        return RegExpr::test(PropFormula::falsity());
      case Tok::Eps:
        next();
        return RegExpr::epsilon();
      case Tok::LParen: {
        next();
        RegExpr r = parse_union();
        if (peek().kind != Tok::RParen) error("expected ')'");
        next();
        return r;
      }
      case Tok::End:
        error("expected an expression");
      default:
        error("unexpected '" + t.text + "'");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

RegExpr parse_regex(std::string_view text) { return RegexParser(tokenize_regex(text)).parse(); }

// ---------------------------------------------------------------------------
// Glushkov construction

namespace {

struct Positions {
  bool nullable = false;
  std::vector<std::uint32_t> first;
  std::vector<std::uint32_t> last;
};

void add_all(std::vector<std::uint32_t>& dst, const std::vector<std::uint32_t>& src) {
  dst.insert(dst.end(), src.begin(), src.end());
}

class Linearizer {
 public:
  std::vector<PropFormula> guards;                  // guard of position p is guards[p - 1]
  std::vector<std::vector<std::uint32_t>> follow;   // indexed by position

  Positions visit(const RegExpr& r) {
    Positions out;
    switch (r.kind()) {
      case RegExpr::Kind::Epsilon:
        out.nullable = true;
        break;
      case RegExpr::Kind::Test: {
        guards.push_back(r.formula());
        follow.emplace_back();
        const auto p = static_cast<std::uint32_t>(guards.size());
        out.first = {p};
        out.last = {p};
        break;
      }
      case RegExpr::Kind::Union: {
        Positions a = visit(r.lhs());
        Positions b = visit(r.rhs());
        out.nullable = a.nullable || b.nullable;
        out.first = a.first;
        add_all(out.first, b.first);
        out.last = a.last;
        add_all(out.last, b.last);
        break;
      }
      case RegExpr::Kind::Concat: {
        Positions a = visit(r.lhs());
        Positions b = visit(r.rhs());
        for (auto p : a.last) add_all(follow[p - 1], b.first);
        out.nullable = a.nullable && b.nullable;
        out.first = a.first;
        if (a.nullable) add_all(out.first, b.first);
        out.last = b.last;
        if (b.nullable) add_all(out.last, a.last);
        break;
      }
      case RegExpr::Kind::Star: {
        Positions a = visit(r.body());
        for (auto p : a.last) add_all(follow[p - 1], a.first);
        out.nullable = true;
        out.first = a.first;
        out.last = a.last;
        break;
      }
    }
    return out;
  }
};

void sort_unique(std::vector<std::uint32_t>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

Nfa compile(const RegExpr& r, const std::vector<std::string>& props) {
  const RegExpr bound = r.bind(props);
  Linearizer lin;
  Positions top = lin.visit(bound);
  sort_unique(top.first);
  sort_unique(top.last);
  for (auto& f : lin.follow) sort_unique(f);

  const auto positions = static_cast<std::uint32_t>(lin.guards.size());
  const std::uint32_t sink = positions + 1;

  Nfa a;
  a.owner_tag_ = r.to_string();
  a.accepting_.assign(positions + 2, false);
  a.accepting_[0] = top.nullable;
  for (auto p : top.last) a.accepting_[p] = true;

  for (std::uint32_t q = 0; q <= positions; ++q) {
    const auto& targets = q == 0 ? top.first : lin.follow[q - 1];
    std::optional<PropFormula> any;
    for (auto p : targets) {
      const PropFormula& g = lin.guards[p - 1];
      a.transitions_.push_back({q, g, p});
      any = any ? PropFormula::disjunction(*any, g) : g;
    }
    a.transitions_.push_back({q, any ? PropFormula::negation(*any) : PropFormula::truth(), sink});
  }
  a.transitions_.push_back({sink, PropFormula::truth(), sink});
  return a;
}

bool accepts(const Nfa& a, const LabelWord& w) {
  std::vector<bool> cur(a.num_states(), false);
  cur[0] = true;
  for (const PropSet& letter : w) {
    std::vector<bool> nxt(a.num_states(), false);
    bool live = false;
    for (const auto& t : a.transitions()) {
      if (cur[t.from] && !nxt[t.to] && eval_prop(t.guard, letter)) {
        nxt[t.to] = true;
        live = true;
      }
    }
    if (!live) return false;
    cur = std::move(nxt);
  }
  for (std::size_t q = 0; q < cur.size(); ++q)
    if (cur[q] && a.is_accepting(q)) return true;
  return false;
}

BitMatrix step_pairs(const Nfa& a, const PropSet& letter) {
  BitMatrix m(a.num_states());
  for (const auto& t : a.transitions())
    if (eval_prop(t.guard, letter)) m.set(t.from, t.to);
  return m;
}

}  // namespace hsmc
