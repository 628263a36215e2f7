#pragma once

// Propositional-based regular expressions over 2^AP and their compilation to
// complete NFAs whose transitions carry propositional guards.
//
// Textual grammar (precedence from tightest to loosest):
//   atoms        prop names, true, false, eps, ( ... )
//   !  &  |      propositional operators, only inside a single test
//   *            postfix Kleene star
//   .            concatenation
//   +            union

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hsmc/bit_matrix.hpp"
#include "hsmc/kripke.hpp"
#include "hsmc/prop_set.hpp"

namespace hsmc {

class PropFormula {
 public:
  enum class Kind : std::uint8_t { True, False, Atom, Not, And, Or };

  static PropFormula truth();
  static PropFormula falsity();
  static PropFormula atom(std::string name);
  static PropFormula negation(PropFormula f);
  static PropFormula conjunction(PropFormula a, PropFormula b);
  static PropFormula disjunction(PropFormula a, PropFormula b);

  Kind kind() const noexcept;
  /// Atom name; empty for other kinds.
  const std::string& name() const noexcept;
  /// Proposition index once bound to a vocabulary.
  std::optional<PropId> index() const noexcept;
  const PropFormula& lhs() const;
  const PropFormula& rhs() const;

  /// Resolves atom names against `props`. Throws PreconditionError on an
  /// undeclared name.
  PropFormula bind(const std::vector<std::string>& props) const;
  bool is_bound() const noexcept;

  std::string to_string() const;
  std::size_t hash() const noexcept;

  friend bool operator==(const PropFormula& a, const PropFormula& b) noexcept;

 private:
  struct Node;
  explicit PropFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Throws PreconditionError if `f` has an unbound atom.
bool eval_prop(const PropFormula& f, const PropSet& labels);

class RegExpr {
 public:
  enum class Kind : std::uint8_t { Epsilon, Test, Union, Concat, Star };

  static RegExpr epsilon();
  static RegExpr test(PropFormula f);
  static RegExpr alt(RegExpr a, RegExpr b);
  static RegExpr concat(RegExpr a, RegExpr b);
  static RegExpr star(RegExpr a);

  Kind kind() const noexcept;
  const PropFormula& formula() const;
  const RegExpr& lhs() const;
  const RegExpr& rhs() const;
  /// Operand of a star.
  const RegExpr& body() const { return lhs(); }

  /// Number of subexpression nodes; a test counts as one.
  std::size_t size() const noexcept;
  /// Number of test leaves.
  std::size_t num_tests() const noexcept;

  RegExpr bind(const std::vector<std::string>& props) const;
  /// Expression for the reversed language.
  RegExpr reversed() const;

  std::string to_string() const;
  std::size_t hash() const noexcept;

  friend bool operator==(const RegExpr& a, const RegExpr& b) noexcept;

 private:
  struct Node;
  explicit RegExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct RegExprHash {
  std::size_t operator()(const RegExpr& r) const noexcept { return r.hash(); }
};

/// Throws ParseError carrying a 1-based column.
RegExpr parse_regex(std::string_view text);

struct NfaTransition {
  std::uint32_t from;
  PropFormula guard;
  std::uint32_t to;
};

/// Complete NFA over 2^AP with guarded transitions. State 0 is the unique
/// initial state, the last state is a non-accepting sink with a true
/// self-loop.
class Nfa {
 public:
  std::size_t num_states() const noexcept { return accepting_.size(); }
  bool is_initial(std::size_t q) const noexcept { return q == 0; }
  bool is_accepting(std::size_t q) const { return accepting_[q]; }
  std::size_t sink() const noexcept { return num_states() - 1; }
  const std::vector<NfaTransition>& transitions() const noexcept { return transitions_; }
  /// Textual form of the source expression.
  const std::string& owner_tag() const noexcept { return owner_tag_; }

 private:
  friend Nfa compile(const RegExpr&, const std::vector<std::string>&);
  std::vector<bool> accepting_;
  std::vector<NfaTransition> transitions_;
  std::string owner_tag_;
};

/// Glushkov position automaton (epsilon-free by construction) completed
/// with one sink. |states| = tests + 2 <= 2 * size + 1.
Nfa compile(const RegExpr& r, const std::vector<std::string>& props);

bool accepts(const Nfa& a, const LabelWord& w);

/// One-letter run relation {(q, q') | some (q, g, q') with A |= g}.
BitMatrix step_pairs(const Nfa& a, const PropSet& letter);

}  // namespace hsmc
