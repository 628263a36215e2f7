#pragma once

// Test-side helpers: generators, enumerators and reference implementations
// written independently of the library internals.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "hsmc/formula.hpp"
#include "hsmc/kripke.hpp"
#include "hsmc/relang.hpp"
#include "hsmc/summary.hpp"
#include "hsmc/tiling.hpp"

namespace hsmc {

// readable gtest output
inline void PrintTo(const HsFormula& f, std::ostream* os) { *os << f.to_string(); }
inline void PrintTo(const RegExpr& r, std::ostream* os) { *os << r.to_string(); }
inline void PrintTo(const Trace& t, std::ostream* os) {
  *os << "[";
  for (std::size_t i = 0; i < t.size(); ++i) *os << (i ? " " : "") << t[i];
  *os << "]";
}

}  // namespace hsmc

namespace hsmc::testing {

/// The two-state example model: s0 {p} -> s1 {q}, s1 -> s0, s1 -> s1.
KripkeStructure k0();
/// One state labelled {p} (or `label`) with a self-loop.
KripkeStructure single_loop(const std::vector<std::string>& label = {"p"});

/// Membership by structural recursion on the expression, using end-position
/// sets. Shares nothing with the automaton construction.
bool regex_match(const RegExpr& r, const std::vector<std::string>& props, const LabelWord& w);

/// Every regex with at most `max_size` nodes built from the given leaves
/// with union, concatenation and star.
std::vector<RegExpr> all_regexes(const std::vector<RegExpr>& leaves, std::size_t max_size);
/// Leaves used by the exhaustive regex suites for a vocabulary.
std::vector<RegExpr> regex_leaves(const std::vector<std::string>& props);

/// All words over 2^AP of length <= max_len (the empty word included).
std::vector<LabelWord> all_label_words(std::size_t num_props, std::size_t max_len);

/// All traces of k of length in [1, max_len], shortest first.
std::vector<Trace> all_traces(const KripkeStructure& k, std::size_t max_len);
/// Traces starting at s of length in [1, max_len].
std::vector<Trace> traces_from(const KripkeStructure& k, StateId s, std::size_t max_len);

/// Random structure over props {p, q} (or `props`); every state gets at
/// least one successor.
KripkeStructure random_kripke(std::mt19937_64& rng, std::size_t states,
                              const std::vector<std::string>& props = {"p", "q"});

/// Every structure with 1 or 2 states over props {p, q}, initial state s0,
/// one representative per orbit of the p <-> q relabelling.
std::vector<KripkeStructure> all_small_models();

/// Exact K |= phi for a one-state structure, with no bound on trace length.
/// Its traces are s^n, one per length, so every subformula is a truth vector
/// over n. Vectors become constant beyond a small threshold, which lets the
/// value at `horizon` stand for every longer trace. The horizon must exceed
/// the longest constant prefix an atom's language has on a unary word plus
/// the modal depth of phi.
bool single_state_holds(const KripkeStructure& k, const HsFormula& phi, std::size_t horizon = 64);

/// Formulas in positive normal form with node count <= max_size, leaves
/// being the atoms and negated atoms of `pool`, modal operators from
/// `modalities`. Commutative operands are emitted once (lhs index <= rhs
/// index). Subformulas are shared between results.
std::vector<HsFormula> all_pnf_formulas(const std::vector<RegExpr>& pool, ModalityMask modalities,
                                        std::size_t max_size);

/// Random formula with the given node budget, optionally allowing Not.
HsFormula random_formula(std::mt19937_64& rng, const std::vector<RegExpr>& pool, ModalityMask modalities,
                         std::size_t size, bool allow_not = false);

std::vector<Modality> modalities_in(ModalityMask m);

/// h-prefix bisimilarity by the inductive definition: equal summaries, and
/// for h > 0 every proper prefix of one side is matched by an (h-1)-prefix
/// bisimilar proper prefix of the other, in both directions.
bool reference_bisimilar(const KripkeStructure& k, const SpecSet& spec, const Trace& a, const Trace& b, std::size_t h);

/// Instance n = 2, D = {d} plus `extra` dominoes, all relations {(d, d)},
/// D0 = Dacc = {d}.
TilingInstance single_domino_instance(const std::vector<std::string>& extra = {});
/// Row-major multi-tiling code with every content d...d.
CodeWord uniform_multitiling(const TilingInstance& inst, const std::string& d);
/// Initial cell codes for columns 0 .. 2^n - 1, all with content d.
CodeWord uniform_initialization(const TilingInstance& inst, const std::string& d);
/// bot w bot w_n ... bot w_1 end from the two codes above.
CodeWord uniform_initialized(const TilingInstance& inst, const std::string& d);

}  // namespace hsmc::testing
