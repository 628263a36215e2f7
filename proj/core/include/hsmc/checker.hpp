#pragma once

// Model checking of A Abar B Bbar Ebar formulas (and, by reversal, of the
// mirror fragment A Abar E Bbar Ebar) over finite Kripke structures.
//
// A CheckSession fixes the structure, the spec set, the prefix depth h and
// the configuration, and memoizes every evaluated (formula, certificate)
// obligation so that many formulas can share one session.
//
// Two enumeration regimes:
//   complete  the cap (if any) reaches the theoretical certificate bound.
//             Certificates are explored on the quotient of traces under
//             contraction: every extension is contracted immediately.
//   capped    the cap is below the bound. Certificates are all traces of
//             length <= cap, without contraction, and every quantifier
//             ranges over traces of length <= cap. Verdicts then coincide
//             with the equally bounded semantics and are flagged incomplete.

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "hsmc/bisim.hpp"
#include "hsmc/formula.hpp"
#include "hsmc/kripke.hpp"
#include "hsmc/summary.hpp"

namespace hsmc {

enum class Direction : std::uint8_t { Forward, Backward };

struct CheckerConfig {
  /// Maximum certificate length; unset means the theoretical bound.
  std::optional<std::size_t> max_cert_len;
  bool collect_stats = false;
  bool witness = false;
};

struct CheckStats {
  std::size_t certificates_explored = 0;
  std::size_t contractions = 0;
  /// Largest number of True/False mode switches along one call path. In a
  /// Verdict it covers that check only; CheckSession::stats is cumulative.
  std::size_t mode_switches = 0;
  std::size_t obligations = 0;
  std::size_t summaries = 0;
};

struct Verdict {
  bool satisfied = false;
  /// Counterexample when violated; an initial certificate on which the
  /// formula holds when satisfied and a witness was requested.
  std::optional<Trace> trace;
  bool complete = false;
  CheckStats stats;
};

struct Obligation {
  HsFormula formula;
  Trace certificate;
};

/// Ordered obligation list. Universal when every formula is a Bbar or
/// Ebar box.
using WellFormedSet = std::vector<Obligation>;
bool is_universal(const WellFormedSet& w);

/// Per state, the members of aa_set(phi) that hold at the state.
struct AaLabeling {
  std::vector<std::vector<HsFormula>> members;
  bool contains(StateId s, const HsFormula& f) const;
};

class CheckSession {
 public:
  /// `spec` must contain every atom of the formulas later evaluated and `h`
  /// must be at least their depth_b. The structure must outlive the session.
  CheckSession(const KripkeStructure& k, std::vector<RegExpr> spec, std::size_t h, CheckerConfig cfg = {});
  ~CheckSession();
  CheckSession(const CheckSession&) = delete;
  CheckSession& operator=(const CheckSession&) = delete;

  const KripkeStructure& structure() const noexcept;
  const SpecSet& spec() const noexcept;
  std::size_t depth() const noexcept;
  /// True when certificates up to the theoretical bound are covered.
  bool complete() const noexcept;
  /// Longest certificate considered.
  std::size_t max_certificate_length() const noexcept;
  const BigInt& theoretical_bound() const noexcept;

  /// Certificates starting (forward) or ending (backward) at `anchor`,
  /// shortest first, then lexicographic by state index.
  std::vector<Trace> certificates(StateId anchor, Direction d);
  /// Certificates standing for the extensions rho * rho'' (X = Bbar) or
  /// rho'' * rho (X = Ebar) with |rho''| > 1.
  std::vector<Trace> witnesses(const Trace& rho, Modality x);

  /// Truth of a PNF formula on a trace.
  bool holds(const HsFormula& f, const Trace& rho);
  /// True iff every obligation holds.
  bool check_true(const WellFormedSet& w);
  /// True iff some obligation fails.
  bool check_false(const WellFormedSet& w);

  AaLabeling compute_labeling(const HsFormula& phi);

  /// Decides K |= phi for a PNF formula of the prefix fragment: phi holds on
  /// every certificate starting at the initial state. Backward quantifies
  /// over certificates ending there instead (used by the mirror reduction).
  Verdict check_initial(const HsFormula& phi, Direction d = Direction::Forward);

  CheckStats stats() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Full pipeline: fragment check, PNF, spec = atoms of the formula,
/// h = depth_b, mirror reduction for formulas using E.
/// Throws PreconditionError for formulas outside both fragments.
Verdict model_check(const KripkeStructure& k, const HsFormula& phi, const CheckerConfig& cfg = {});

}  // namespace hsmc
