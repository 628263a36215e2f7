#pragma once

// Finite Kripke structures, traces over them, and the line-based model file
// format:
//
//   props: p q
//   states: s0 s1
//   init: s0
//   edge: s0 s1
//   label s0: p
//
// '#' starts a comment. A "label s:" line with nothing after the colon
// assigns the empty set; states without a label line are labelled empty.

#include <cstdint>
#include <functional>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hsmc/prop_set.hpp"

namespace hsmc {

using StateId = std::uint32_t;

/// Identifier tokens for states and propositions: [A-Za-z_][A-Za-z0-9_']*.
bool is_identifier(std::string_view token) noexcept;

/// A non-empty sequence of state indices into the owning structure. The
/// type does not know its structure; validity is checked by the operations
/// that take both (label_word, KripkeStructure::is_trace).
struct Trace {
  std::vector<StateId> steps;

  Trace() = default;
  Trace(std::initializer_list<StateId> s) : steps(s) {}
  explicit Trace(std::vector<StateId> s) : steps(std::move(s)) {}

  std::size_t size() const noexcept { return steps.size(); }
  StateId first() const { return steps.front(); }
  StateId last() const { return steps.back(); }
  StateId operator[](std::size_t i) const { return steps[i]; }

  friend bool operator==(const Trace&, const Trace&) = default;
  friend auto operator<=>(const Trace&, const Trace&) = default;
};

struct TraceHash {
  std::size_t operator()(const Trace& t) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (StateId s : t.steps) h = (h ^ s) * 0x100000001b3ull;
    return h;
  }
};

using LabelWord = std::vector<PropSet>;

class KripkeStructure {
 public:
  /// Builds and validates a structure. Throws PreconditionError when an
  /// invariant is violated (empty or duplicate identifiers, dangling edge,
  /// label outside the proposition table, bad initial state).
  KripkeStructure(std::vector<std::string> props, std::vector<std::string> states,
                  std::vector<std::pair<StateId, StateId>> edges, std::vector<PropSet> labels,
                  StateId initial);

  const std::vector<std::string>& props() const noexcept { return props_; }
  const std::vector<std::string>& states() const noexcept { return states_; }
  std::size_t num_states() const noexcept { return states_.size(); }
  std::size_t num_props() const noexcept { return props_.size(); }
  StateId initial() const noexcept { return initial_; }

  const PropSet& label(StateId s) const { return labels_[s]; }
  const std::vector<StateId>& successors(StateId s) const { return succ_[s]; }
  const std::vector<StateId>& predecessors(StateId s) const { return pred_[s]; }
  bool has_edge(StateId from, StateId to) const;

  /// Edges in (source, target) lexicographic order.
  std::vector<std::pair<StateId, StateId>> edges() const;
  std::size_t num_edges() const noexcept;

  std::optional<StateId> find_state(std::string_view name) const;
  std::optional<PropId> find_prop(std::string_view name) const;
  const std::string& state_name(StateId s) const { return states_[s]; }

  bool is_trace(const Trace& t) const;
  /// Throws PreconditionError naming the first offending step.
  void require_trace(const Trace& t) const;

  /// Space-separated state names, e.g. "s0 s1 s0".
  std::string format_trace(const Trace& t) const;
  /// Inverse of format_trace. Throws ParseError / PreconditionError.
  Trace parse_trace(std::string_view text) const;

  friend bool operator==(const KripkeStructure& a, const KripkeStructure& b);

 private:
  std::vector<std::string> props_;
  std::vector<std::string> states_;
  std::vector<std::vector<StateId>> succ_;
  std::vector<std::vector<StateId>> pred_;
  std::vector<PropSet> labels_;
  StateId initial_;
};

KripkeStructure parse_model(std::istream& in);
KripkeStructure parse_model(std::string_view text);
std::string serialize_model(const KripkeStructure& k);

LabelWord label_word(const KripkeStructure& k, const Trace& t);

/// w1(1, n-1) followed by w2; requires last(w1) == first(w2).
Trace star_concat(const Trace& lhs, const Trace& rhs);

/// Proper prefixes by increasing length; proper suffixes by increasing
/// start position (so decreasing length).
std::vector<Trace> proper_prefixes(const Trace& t);
std::vector<Trace> proper_suffixes(const Trace& t);

Trace reversed(const Trace& t);

/// Same states, props, labels and initial state; every edge reversed.
KripkeStructure reverse(const KripkeStructure& k);

}  // namespace hsmc
