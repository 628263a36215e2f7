#pragma once

// Reference semantics by brute force. Every trace quantifier (A, Abar, Bbar,
// Ebar, and the initial-trace quantifier) ranges over traces of length at
// most L; B and E range over proper prefixes and suffixes. Accepts any
// formula of the parser, negations included, and is deliberately written
// without the checker's machinery.

#include <cstddef>
#include <memory>
#include <optional>

#include "hsmc/formula.hpp"
#include "hsmc/kripke.hpp"

namespace hsmc {

class Oracle {
 public:
  /// The structure must outlive the oracle.
  Oracle(const KripkeStructure& k, std::size_t max_trace);
  ~Oracle();
  Oracle(const Oracle&) = delete;
  Oracle& operator=(const Oracle&) = delete;

  std::size_t bound() const noexcept;

  bool holds(const HsFormula& f, const Trace& rho);
  /// First initial trace (shortest, then lexicographic) violating f.
  std::optional<Trace> counterexample(const HsFormula& f);
  bool model_check(const HsFormula& f) { return !counterexample(f); }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

bool oracle_holds(const KripkeStructure& k, const Trace& rho, const HsFormula& f, std::size_t max_trace);
bool oracle_model_check(const KripkeStructure& k, const HsFormula& f, std::size_t max_trace);

}  // namespace hsmc
