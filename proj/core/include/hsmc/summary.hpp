#pragma once

// Trace summaries with respect to a specification set: the first state, for
// every automaton the relation "some run over the trace's label word leads
// from q to q'", and the last state.

#include <cstddef>
#include <cstdint>
#include <deque>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hsmc/bit_matrix.hpp"
#include "hsmc/kripke.hpp"
#include "hsmc/relang.hpp"

namespace hsmc {

using BigInt = boost::multiprecision::cpp_int;

/// Clamps to the size_t range.
std::size_t saturate(const BigInt& v) noexcept;

class SpecSet {
 public:
  /// Compiles every expression against `props`. Duplicate expressions are
  /// kept once, in order of first occurrence.
  SpecSet(std::vector<RegExpr> exprs, const std::vector<std::string>& props);

  std::size_t count() const noexcept { return exprs_.size(); }
  const std::vector<RegExpr>& exprs() const noexcept { return exprs_; }
  const Nfa& automaton(std::size_t i) const { return automata_[i]; }
  /// Sum of expression sizes.
  std::size_t size() const noexcept { return size_; }

  /// Automaton states are numbered globally: state q of automaton i has
  /// identifier state_offset(i) + q, so identifier spaces never overlap.
  std::size_t state_offset(std::size_t i) const { return offsets_[i]; }
  std::size_t total_states() const noexcept { return offsets_.back(); }

  std::optional<std::size_t> index_of(const RegExpr& r) const;

 private:
  std::vector<RegExpr> exprs_;
  std::vector<Nfa> automata_;
  std::vector<std::size_t> offsets_;
  std::size_t size_ = 0;
};

struct Summary {
  StateId first = 0;
  /// One relation per automaton of the spec set, indexed like the set.
  std::vector<BitMatrix> pairs;
  StateId last = 0;

  /// True iff the summarised label word is in L(spec[i]).
  bool accepts(const SpecSet& spec, std::size_t i) const;
  /// Global-identifier view of the pair set.
  std::vector<std::pair<std::size_t, std::size_t>> global_pairs(const SpecSet& spec) const;

  std::size_t hash() const noexcept;
  friend bool operator==(const Summary&, const Summary&) = default;
};

struct SummaryHash {
  std::size_t operator()(const Summary& s) const noexcept { return s.hash(); }
};

Summary summary_of(const KripkeStructure& k, const SpecSet& spec, const Trace& rho);
Summary extend_summary(const Summary& s, const SpecSet& spec, const PropSet& letter, StateId next_state);

/// |S|^2 * 2^((2|spec|)^2)
BigInt summary_count_bound(const KripkeStructure& k, const SpecSet& spec);

using SummaryId = std::uint32_t;

/// Interning table for the summaries of one (structure, spec) pair. Equal
/// summaries get equal ids. Safe for concurrent use.
class SummaryTable {
 public:
  SummaryTable(const KripkeStructure& k, const SpecSet& spec);

  const KripkeStructure& structure() const noexcept { return k_; }
  const SpecSet& spec() const noexcept { return spec_; }

  SummaryId intern(Summary s);
  /// Reference stays valid for the lifetime of the table.
  const Summary& get(SummaryId id) const;
  std::size_t size() const;

  /// Summary of the one-state trace [s].
  SummaryId of_state(StateId s);
  /// Summary of rho * s given the summary of rho (cached).
  SummaryId extend(SummaryId id, StateId s);
  SummaryId of_trace(const Trace& rho);
  /// Summaries of rho(1, 1), ..., rho(1, |rho|).
  std::vector<SummaryId> prefixes(const Trace& rho);

  bool accepts(SummaryId id, std::size_t spec_index) const;

 private:
  SummaryId intern_locked(Summary s);

  const KripkeStructure& k_;
  const SpecSet& spec_;
  // step_[s][i] = one-letter relation of automaton i on the label of s
  std::vector<std::vector<BitMatrix>> step_;
  mutable std::mutex mu_;
  std::deque<Summary> store_;
  std::unordered_map<Summary, SummaryId, SummaryHash> index_;
  std::unordered_map<std::uint64_t, SummaryId> ext_;
  std::vector<std::optional<SummaryId>> single_;
};

}  // namespace hsmc
