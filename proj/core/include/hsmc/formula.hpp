#pragma once

// HS formulas with regular-expression atoms.
//
// Textual grammar:
//   atoms       {regex}
//   connectives ~  &  |  ->      (tightest first; -> is right-associative)
//   modalities  <X> and [X] for X in A ~A B ~B E ~E; they bind like ~
//
// A leading '~' inside a modality names the inverse relation, so <~B> is the
// "begun by" diamond and [~E] the "ended by" box.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hsmc/relang.hpp"

namespace hsmc {

enum class Modality : std::uint8_t { A, Abar, B, Bbar, E, Ebar };

/// Bit i is set when Modality(i) occurs.
using ModalityMask = std::uint8_t;

constexpr ModalityMask mask_of(Modality m) { return static_cast<ModalityMask>(1u << static_cast<unsigned>(m)); }

/// Modalities of the checker's native fragment and of its mirror image.
constexpr ModalityMask kPrefixFragment =
    mask_of(Modality::A) | mask_of(Modality::Abar) | mask_of(Modality::B) | mask_of(Modality::Bbar) |
    mask_of(Modality::Ebar);
constexpr ModalityMask kSuffixFragment =
    mask_of(Modality::A) | mask_of(Modality::Abar) | mask_of(Modality::E) | mask_of(Modality::Bbar) |
    mask_of(Modality::Ebar);

/// "A", "~A", "B", ...
std::string modality_name(Modality m);

class HsFormula {
 public:
  enum class Kind : std::uint8_t { Atom, NegAtom, Not, And, Or, Diamond, Box };

  static HsFormula atom(RegExpr r);
  static HsFormula neg_atom(RegExpr r);
  static HsFormula negation(HsFormula f);
  static HsFormula conjunction(HsFormula a, HsFormula b);
  static HsFormula disjunction(HsFormula a, HsFormula b);
  /// Desugared to ~a | b.
  static HsFormula implication(HsFormula a, HsFormula b);
  static HsFormula diamond(Modality m, HsFormula f);
  static HsFormula box(Modality m, HsFormula f);

  Kind kind() const noexcept;
  bool is_modal() const noexcept { return kind() == Kind::Diamond || kind() == Kind::Box; }
  Modality modality() const;
  const RegExpr& regex() const;
  /// Operand of Not / Diamond / Box, left operand of And / Or.
  const HsFormula& lhs() const;
  const HsFormula& rhs() const;
  const HsFormula& operand() const { return lhs(); }

  /// Node count; an atom or negated atom counts as one node.
  std::size_t size() const noexcept;
  /// Set of modalities occurring anywhere in the formula.
  ModalityMask modalities() const noexcept;
  std::size_t hash() const noexcept;
  std::string to_string() const;

  /// Stable identity of the shared node, usable as a memo key while the
  /// formula is alive.
  const void* node_address() const noexcept { return node_.get(); }

  friend bool operator==(const HsFormula& a, const HsFormula& b) noexcept;

 private:
  struct Node;
  explicit HsFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct HsFormulaHash {
  std::size_t operator()(const HsFormula& f) const noexcept { return f.hash(); }
};

/// `~` applied directly to an atom yields a negated atom; any other `~` is
/// kept as a negation node. Throws ParseError (with a 1-based column) on
/// malformed input or on an unknown modality token.
HsFormula parse_formula(std::string_view text);

bool is_pnf(const HsFormula& f);
HsFormula to_pnf(const HsFormula& f);
/// PNF of the negation. Throws PreconditionError if `f` is not in PNF.
HsFormula dual(const HsFormula& f);

bool in_fragment(const HsFormula& f, ModalityMask allowed);

/// Nesting depth of B-modalities; boxes count like diamonds and every other
/// modality is transparent.
std::size_t depth_b(const HsFormula& f);
/// Maximum number of diamond/box switches among B-bar/E-bar modalities along
/// a root-to-leaf path. A, A-bar, B (and E) are transparent.
std::size_t upsilon(const HsFormula& f);

/// Subformulas (post-order, deduplicated) each followed by its dual.
std::vector<HsFormula> sd_set(const HsFormula& f);
/// Members of sd_set rooted at an A or A-bar modality.
std::vector<HsFormula> aa_set(const HsFormula& f);

/// Distinct atom expressions in order of first occurrence (left to right).
std::vector<RegExpr> formula_atoms(const HsFormula& f);

/// Mirror image under trace reversal: A <-> A-bar, B <-> E, B-bar <-> E-bar,
/// and every atom replaced by the expression of its reversed language.
/// K, rho |= f  iff  rev(K), rev(rho) |= mirror(f).
HsFormula mirror(const HsFormula& f);

}  // namespace hsmc
