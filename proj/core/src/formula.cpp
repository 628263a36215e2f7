#include "hsmc/formula.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <unordered_set>

#include "hsmc/error.hpp"

namespace hsmc {

std::string modality_name(Modality m) {
  switch (m) {
    case Modality::A: return "A";
    case Modality::Abar: return "~A";
    case Modality::B: return "B";
    case Modality::Bbar: return "~B";
    case Modality::E: return "E";
    case Modality::Ebar: return "~E";
  }
  return "?";
}

struct HsFormula::Node {
  Kind kind;
  Modality modality = Modality::A;
  std::optional<RegExpr> regex{};
  std::optional<HsFormula> a{};
  std::optional<HsFormula> b{};
  std::size_t size = 1;
  ModalityMask mods = 0;
  std::size_t hash = 0;
};

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

}  // namespace

HsFormula HsFormula::atom(RegExpr r) {
  Node n{Kind::Atom};
  n.hash = mix(0x101, r.hash());
  n.regex = std::move(r);
  return HsFormula(std::make_shared<const Node>(std::move(n)));
}

HsFormula HsFormula::neg_atom(RegExpr r) {
  Node n{Kind::NegAtom};
  n.hash = mix(0x202, r.hash());
  n.regex = std::move(r);
  return HsFormula(std::make_shared<const Node>(std::move(n)));
}

HsFormula HsFormula::negation(HsFormula f) {
  Node n{Kind::Not};
  n.size = 1 + f.size();
  n.mods = f.modalities();
  n.hash = mix(0x303, f.hash());
  n.a = std::move(f);
  return HsFormula(std::make_shared<const Node>(std::move(n)));
}

HsFormula HsFormula::conjunction(HsFormula a, HsFormula b) {
  Node n{Kind::And};
  n.size = 1 + a.size() + b.size();
  n.mods = a.modalities() | b.modalities();
  n.hash = mix(mix(0x404, a.hash()), b.hash());
  n.a = std::move(a);
  n.b = std::move(b);
  return HsFormula(std::make_shared<const Node>(std::move(n)));
}

HsFormula HsFormula::disjunction(HsFormula a, HsFormula b) {
  Node n{Kind::Or};
  n.size = 1 + a.size() + b.size();
  n.mods = a.modalities() | b.modalities();
  n.hash = mix(mix(0x505, a.hash()), b.hash());
  n.a = std::move(a);
  n.b = std::move(b);
  return HsFormula(std::make_shared<const Node>(std::move(n)));
}

HsFormula HsFormula::implication(HsFormula a, HsFormula b) {
  return disjunction(negation(std::move(a)), std::move(b));
}

HsFormula HsFormula::diamond(Modality m, HsFormula f) {
  Node n{Kind::Diamond, m};
  n.size = 1 + f.size();
  n.mods = f.modalities() | mask_of(m);
  n.hash = mix(mix(0x606, static_cast<std::size_t>(m)), f.hash());
  n.a = std::move(f);
  return HsFormula(std::make_shared<const Node>(std::move(n)));
}

HsFormula HsFormula::box(Modality m, HsFormula f) {
  Node n{Kind::Box, m};
  n.size = 1 + f.size();
  n.mods = f.modalities() | mask_of(m);
  n.hash = mix(mix(0x707, static_cast<std::size_t>(m)), f.hash());
  n.a = std::move(f);
  return HsFormula(std::make_shared<const Node>(std::move(n)));
}

HsFormula::Kind HsFormula::kind() const noexcept { return node_->kind; }
Modality HsFormula::modality() const { return node_->modality; }
const RegExpr& HsFormula::regex() const { return *node_->regex; }
const HsFormula& HsFormula::lhs() const { return *node_->a; }
const HsFormula& HsFormula::rhs() const { return *node_->b; }
std::size_t HsFormula::size() const noexcept { return node_->size; }
ModalityMask HsFormula::modalities() const noexcept { return node_->mods; }
std::size_t HsFormula::hash() const noexcept { return node_->hash; }

bool operator==(const HsFormula& a, const HsFormula& b) noexcept {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.kind() != b.kind() || a.size() != b.size()) return false;
  switch (a.kind()) {
    case HsFormula::Kind::Atom:
    case HsFormula::Kind::NegAtom:
      return a.regex() == b.regex();
    case HsFormula::Kind::Not:
      return a.lhs() == b.lhs();
    case HsFormula::Kind::And:
    case HsFormula::Kind::Or:
      return a.lhs() == b.lhs() && a.rhs() == b.rhs();
    case HsFormula::Kind::Diamond:
    case HsFormula::Kind::Box:
      return a.modality() == b.modality() && a.lhs() == b.lhs();
  }
  return false;
}

std::string HsFormula::to_string() const {
  // precedence: or 0, and 1, unary 2
  std::function<std::string(const HsFormula&, int)> go = [&](const HsFormula& f, int ctx) -> std::string {
    switch (f.kind()) {
      case Kind::Atom:
        return "{" + f.regex().to_string() + "}";
      case Kind::NegAtom:
        return "~{" + f.regex().to_string() + "}";
      case Kind::Not:
        return "~" + go(f.lhs(), 2);
      case Kind::Diamond:
        return "<" + modality_name(f.modality()) + ">" + go(f.lhs(), 2);
      case Kind::Box:
        return "[" + modality_name(f.modality()) + "]" + go(f.lhs(), 2);
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

// ---------------------------------------------------------------------------
// Parser

namespace {

enum class FTok { Atom, Tilde, Amp, Bar, Arrow, LParen, RParen, Diamond, Box, End };

struct FToken {
  FTok kind;
  std::string text;  // regex text or modality name
  std::size_t column;
};

Modality modality_from(const std::string& name, std::size_t column) {
  if (name == "A") return Modality::A;
  if (name == "~A") return Modality::Abar;
  if (name == "B") return Modality::B;
  if (name == "~B") return Modality::Bbar;
  if (name == "E") return Modality::E;
  if (name == "~E") return Modality::Ebar;
  throw ParseError("unsupported modality '" + name + "' at column " + std::to_string(column), column);
}

std::vector<FToken> tokenize_formula(std::string_view text) {
  std::vector<FToken> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    const std::size_t col = i + 1;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    switch (c) {
      case '{': {
        const std::size_t close = text.find('}', i + 1);
        if (close == std::string_view::npos) throw ParseError("unterminated atom at column " + std::to_string(col), col);
        out.push_back({FTok::Atom, std::string(text.substr(i + 1, close - i - 1)), col});
        i = close + 1;
        continue;
      }
      case '<':
      case '[': {
        const char closer = c == '<' ? '>' : ']';
        const std::size_t close = text.find(closer, i + 1);
        if (close == std::string_view::npos)
          throw ParseError("unterminated modality at column " + std::to_string(col), col);
        std::string name;
        for (char ch : text.substr(i + 1, close - i - 1))
          if (!std::isspace(static_cast<unsigned char>(ch))) name += ch;
        out.push_back({c == '<' ? FTok::Diamond : FTok::Box, std::move(name), col});
        i = close + 1;
        continue;
      }
      case '~': out.push_back({FTok::Tilde, "~", col}); break;
      case '&': out.push_back({FTok::Amp, "&", col}); break;
      case '|': out.push_back({FTok::Bar, "|", col}); break;
      case '(': out.push_back({FTok::LParen, "(", col}); break;
      case ')': out.push_back({FTok::RParen, ")", col}); break;
      case '-':
        if (i + 1 < text.size() && text[i + 1] == '>') {
          out.push_back({FTok::Arrow, "->", col});
          i += 2;
          continue;
        }
        [[fallthrough]];
      default:
        throw ParseError("unexpected character '" + std::string(1, c) + "' at column " + std::to_string(col), col);
    }
    ++i;
  }
  out.push_back({FTok::End, "", text.size() + 1});
  return out;
}

class FormulaParser {
 public:
  explicit FormulaParser(std::vector<FToken> toks) : toks_(std::move(toks)) {}

  HsFormula parse() {
    if (peek().kind == FTok::End) throw ParseError("empty formula", peek().column);
    HsFormula f = parse_implication();
    if (peek().kind != FTok::End) error("unexpected '" + peek().text + "'");
    return f;
  }

 private:
  const FToken& peek() const { return toks_[pos_]; }
  const FToken& next() { return toks_[pos_++]; }

  [[noreturn]] void error(const std::string& msg) const {
    const FToken& t = peek();
    const std::string where =
        t.kind == FTok::End ? "at end of input" : "at column " + std::to_string(t.column);
    throw ParseError("syntax error " + where + ": " + msg, t.column);
  }

  HsFormula parse_implication() {
    HsFormula lhs = parse_or();
    if (peek().kind == FTok::Arrow) {
      next();
      return HsFormula::implication(lhs, parse_implication());
    }
    return lhs;
  }

  HsFormula parse_or() {
    HsFormula f = parse_and();
    while (peek().kind == FTok::Bar) {
      next();
      f = HsFormula::disjunction(f, parse_and());
    }
    return f;
  }

  HsFormula parse_and() {
    HsFormula f = parse_unary();
    while (peek().kind == FTok::Amp) {
      next();
      f = HsFormula::conjunction(f, parse_unary());
    }
    return f;
  }

  HsFormula parse_unary() {
    const FToken& t = peek();
    switch (t.kind) {
      case FTok::Tilde: {
        next();
        HsFormula body = parse_unary();
        if (body.kind() == HsFormula::Kind::Atom) return HsFormula::neg_atom(body.regex());
        return HsFormula::negation(std::move(body));
      }
      case FTok::Diamond:
      case FTok::Box: {
        next();
        const Modality m = modality_from(t.text, t.column);
        HsFormula body = parse_unary();
        return t.kind == FTok::Diamond ? HsFormula::diamond(m, body) : HsFormula::box(m, body);
      }
      case FTok::Atom: {
        next();
        try {
          return HsFormula::atom(parse_regex(t.text));
        } catch (const ParseError& e) {
          const std::size_t col = t.column + e.location();
          throw ParseError("in atom at column " + std::to_string(t.column) + ": " + e.what(), col);
        }
      }
      case FTok::LParen: {
        next();
        HsFormula f = parse_implication();
        if (peek().kind != FTok::RParen) error("expected ')'");
        next();
        return f;
      }
      case FTok::End:
        error("expected a formula");
      default:
        error("unexpected '" + t.text + "'");
    }
  }

  std::vector<FToken> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

HsFormula parse_formula(std::string_view text) { return FormulaParser(tokenize_formula(text)).parse(); }

// ---------------------------------------------------------------------------
// Normal forms and measures

bool is_pnf(const HsFormula& f) {
  switch (f.kind()) {
    case HsFormula::Kind::Atom:
    case HsFormula::Kind::NegAtom:
      return true;
    case HsFormula::Kind::Not:
      return false;
    case HsFormula::Kind::And:
    case HsFormula::Kind::Or:
      return is_pnf(f.lhs()) && is_pnf(f.rhs());
    case HsFormula::Kind::Diamond:
    case HsFormula::Kind::Box:
      return is_pnf(f.operand());
  }
  return false;
}

namespace {

HsFormula pnf(const HsFormula& f, bool negate) {
  using K = HsFormula::Kind;
  switch (f.kind()) {
    case K::Atom:
      return negate ? HsFormula::neg_atom(f.regex()) : f;
    case K::NegAtom:
      return negate ? HsFormula::atom(f.regex()) : f;
    case K::Not:
      return pnf(f.operand(), !negate);
    case K::And:
      return negate ? HsFormula::disjunction(pnf(f.lhs(), true), pnf(f.rhs(), true))
                    : HsFormula::conjunction(pnf(f.lhs(), false), pnf(f.rhs(), false));
    case K::Or:
      return negate ? HsFormula::conjunction(pnf(f.lhs(), true), pnf(f.rhs(), true))
                    : HsFormula::disjunction(pnf(f.lhs(), false), pnf(f.rhs(), false));
    case K::Diamond:
      return negate ? HsFormula::box(f.modality(), pnf(f.operand(), true))
                    : HsFormula::diamond(f.modality(), pnf(f.operand(), false));
    case K::Box:
      return negate ? HsFormula::diamond(f.modality(), pnf(f.operand(), true))
                    : HsFormula::box(f.modality(), pnf(f.operand(), false));
  }
  return f;
}

}  // namespace

HsFormula to_pnf(const HsFormula& f) { return pnf(f, false); }

HsFormula dual(const HsFormula& f) {
  if (!is_pnf(f)) throw PreconditionError("dual requires a formula in positive normal form");
  return pnf(f, true);
}

bool in_fragment(const HsFormula& f, ModalityMask allowed) { return (f.modalities() & ~allowed) == 0; }

std::size_t depth_b(const HsFormula& f) {
  switch (f.kind()) {
    case HsFormula::Kind::Atom:
    case HsFormula::Kind::NegAtom:
      return 0;
    case HsFormula::Kind::Not:
      return depth_b(f.operand());
    case HsFormula::Kind::And:
    case HsFormula::Kind::Or:
      return std::max(depth_b(f.lhs()), depth_b(f.rhs()));
    case HsFormula::Kind::Diamond:
    case HsFormula::Kind::Box:
      return (f.modality() == Modality::B ? 1 : 0) + depth_b(f.operand());
  }
  return 0;
}

namespace {

// last: 0 none seen, 1 diamond, 2 box
std::size_t switches(const HsFormula& f, int last) {
  switch (f.kind()) {
    case HsFormula::Kind::Atom:
    case HsFormula::Kind::NegAtom:
      return 0;
    case HsFormula::Kind::Not:
      return switches(f.operand(), last);
    case HsFormula::Kind::And:
    case HsFormula::Kind::Or:
      return std::max(switches(f.lhs(), last), switches(f.rhs(), last));
    case HsFormula::Kind::Diamond:
    case HsFormula::Kind::Box: {
      const Modality m = f.modality();
      if (m != Modality::Bbar && m != Modality::Ebar) return switches(f.operand(), last);
      const int here = f.kind() == HsFormula::Kind::Diamond ? 1 : 2;
      const std::size_t step = (last != 0 && last != here) ? 1 : 0;
      return step + switches(f.operand(), here);
    }
  }
  return 0;
}

void post_order(const HsFormula& f, std::vector<HsFormula>& out,
                std::unordered_set<HsFormula, HsFormulaHash>& seen) {
  switch (f.kind()) {
    case HsFormula::Kind::Atom:
    case HsFormula::Kind::NegAtom:
      break;
    case HsFormula::Kind::And:
    case HsFormula::Kind::Or:
      post_order(f.lhs(), out, seen);
      post_order(f.rhs(), out, seen);
      break;
    default:
      post_order(f.operand(), out, seen);
  }
  if (seen.insert(f).second) out.push_back(f);
}

}  // namespace

std::size_t upsilon(const HsFormula& f) { return switches(f, 0); }

std::vector<HsFormula> sd_set(const HsFormula& f) {
  if (!is_pnf(f)) throw PreconditionError("SD set requires a formula in positive normal form");
  std::vector<HsFormula> subs;
  std::unordered_set<HsFormula, HsFormulaHash> seen;
  post_order(f, subs, seen);
  std::vector<HsFormula> out;
  std::unordered_set<HsFormula, HsFormulaHash> present;
  for (const auto& s : subs) {
    if (present.insert(s).second) out.push_back(s);
    HsFormula d = dual(s);
    if (present.insert(d).second) out.push_back(std::move(d));
  }
  return out;
}

std::vector<HsFormula> aa_set(const HsFormula& f) {
  std::vector<HsFormula> out;
  for (auto& g : sd_set(f))
    if (g.is_modal() && (g.modality() == Modality::A || g.modality() == Modality::Abar)) out.push_back(g);
  return out;
}

std::vector<RegExpr> formula_atoms(const HsFormula& f) {
  std::vector<RegExpr> out;
  std::function<void(const HsFormula&)> go = [&](const HsFormula& g) {
    switch (g.kind()) {
      case HsFormula::Kind::Atom:
      case HsFormula::Kind::NegAtom:
        if (std::find(out.begin(), out.end(), g.regex()) == out.end()) out.push_back(g.regex());
        break;
      case HsFormula::Kind::And:
      case HsFormula::Kind::Or:
        go(g.lhs());
        go(g.rhs());
        break;
      default:
        go(g.operand());
    }
  };
  go(f);
  return out;
}

HsFormula mirror(const HsFormula& f) {
  auto flip = [](Modality m) {
    switch (m) {
      case Modality::A: return Modality::Abar;
      case Modality::Abar: return Modality::A;
      case Modality::B: return Modality::E;
      case Modality::E: return Modality::B;
      case Modality::Bbar: return Modality::Ebar;
      case Modality::Ebar: return Modality::Bbar;
    }
    return m;
  };
  switch (f.kind()) {
    case HsFormula::Kind::Atom:
      return HsFormula::atom(f.regex().reversed());
    case HsFormula::Kind::NegAtom:
      return HsFormula::neg_atom(f.regex().reversed());
    case HsFormula::Kind::Not:
      return HsFormula::negation(mirror(f.operand()));
    case HsFormula::Kind::And:
      return HsFormula::conjunction(mirror(f.lhs()), mirror(f.rhs()));
    case HsFormula::Kind::Or:
      return HsFormula::disjunction(mirror(f.lhs()), mirror(f.rhs()));
    case HsFormula::Kind::Diamond:
      return HsFormula::diamond(flip(f.modality()), mirror(f.operand()));
    case HsFormula::Kind::Box:
      return HsFormula::box(flip(f.modality()), mirror(f.operand()));
  }
  return f;
}

}  // namespace hsmc
