#include "hsmc/kripke.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <unordered_map>

#include "hsmc/error.hpp"

namespace hsmc {

namespace {

std::vector<std::string> split_ws(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i) out.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  throw ParseError("line " + std::to_string(line) + ": " + msg, line);
}

}  // namespace

bool is_identifier(std::string_view token) noexcept {
  if (token.empty()) return false;
  const auto head = static_cast<unsigned char>(token.front());
  if (!(std::isalpha(head) || head == '_')) return false;
  return std::all_of(token.begin() + 1, token.end(), [](char c) {
    const auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || c == '_' || c == '\'';
  });
}

KripkeStructure::KripkeStructure(std::vector<std::string> props, std::vector<std::string> states,
                                 std::vector<std::pair<StateId, StateId>> edges,
                                 std::vector<PropSet> labels, StateId initial)
    : props_(std::move(props)),
      states_(std::move(states)),
      succ_(states_.size()),
      pred_(states_.size()),
      labels_(std::move(labels)),
      initial_(initial) {
  if (props_.empty()) throw PreconditionError("structure has no propositions");
  if (states_.empty()) throw PreconditionError("structure has no states");
  auto check_unique = [](const std::vector<std::string>& names, const char* what) {
    std::unordered_map<std::string, int> seen;
    for (const auto& n : names) {
      if (!is_identifier(n)) throw PreconditionError(std::string("invalid ") + what + " identifier '" + n + "'");
      if (seen[n]++ != 0) throw PreconditionError(std::string("duplicate ") + what + " '" + n + "'");
    }
  };
  check_unique(props_, "proposition");
  check_unique(states_, "state");
  if (initial_ >= states_.size()) throw PreconditionError("initial state out of range");
  if (labels_.size() != states_.size()) throw PreconditionError("labeling must cover every state");
  for (const auto& l : labels_)
    for (PropId p : l.members())
      if (p >= props_.size()) throw PreconditionError("label refers to an undeclared proposition");
  for (auto [a, b] : edges) {
    if (a >= states_.size() || b >= states_.size()) throw PreconditionError("edge endpoint out of range");
    succ_[a].push_back(b);
  }
  for (auto& s : succ_) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  for (StateId a = 0; a < succ_.size(); ++a)
    for (StateId b : succ_[a]) pred_[b].push_back(a);
}

bool KripkeStructure::has_edge(StateId from, StateId to) const {
  const auto& s = succ_.at(from);
  return std::binary_search(s.begin(), s.end(), to);
}

std::vector<std::pair<StateId, StateId>> KripkeStructure::edges() const {
  std::vector<std::pair<StateId, StateId>> out;
  for (StateId a = 0; a < succ_.size(); ++a)
    for (StateId b : succ_[a]) out.emplace_back(a, b);
  return out;
}

std::size_t KripkeStructure::num_edges() const noexcept {
  std::size_t n = 0;
  for (const auto& s : succ_) n += s.size();
  return n;
}

std::optional<StateId> KripkeStructure::find_state(std::string_view name) const {
  for (StateId i = 0; i < states_.size(); ++i)
    if (states_[i] == name) return i;
  return std::nullopt;
}

std::optional<PropId> KripkeStructure::find_prop(std::string_view name) const {
  for (PropId i = 0; i < props_.size(); ++i)
    if (props_[i] == name) return i;
  return std::nullopt;
}

bool KripkeStructure::is_trace(const Trace& t) const {
  if (t.steps.empty()) return false;
  for (StateId s : t.steps)
    if (s >= states_.size()) return false;
  for (std::size_t i = 0; i + 1 < t.size(); ++i)
    if (!has_edge(t[i], t[i + 1])) return false;
  return true;
}

void KripkeStructure::require_trace(const Trace& t) const {
  if (t.steps.empty()) throw PreconditionError("empty trace");
  for (StateId s : t.steps)
    if (s >= states_.size()) throw PreconditionError("trace refers to an unknown state");
  for (std::size_t i = 0; i + 1 < t.size(); ++i)
    if (!has_edge(t[i], t[i + 1]))
      throw PreconditionError("not a trace: no edge " + states_[t[i]] + " -> " + states_[t[i + 1]] +
                              " at position " + std::to_string(i + 1));
}

std::string KripkeStructure::format_trace(const Trace& t) const {
  std::string out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i != 0) out += ' ';
    out += states_.at(t[i]);
  }
  return out;
}

Trace KripkeStructure::parse_trace(std::string_view text) const {
  Trace t;
  for (const auto& tok : split_ws(text)) {
    auto s = find_state(tok);
    if (!s) throw ParseError("unknown state '" + tok + "' in trace");
    t.steps.push_back(*s);
  }
  require_trace(t);
  return t;
}

bool operator==(const KripkeStructure& a, const KripkeStructure& b) {
  return a.props_ == b.props_ && a.states_ == b.states_ && a.succ_ == b.succ_ && a.labels_ == b.labels_ &&
         a.initial_ == b.initial_;
}

KripkeStructure parse_model(std::istream& in) {
  std::vector<std::string> props;
  std::vector<std::string> states;
  std::unordered_map<std::string, StateId> state_index;
  std::unordered_map<std::string, PropId> prop_index;
  std::vector<std::pair<StateId, StateId>> edges;
  std::vector<std::optional<PropSet>> labels;
  std::optional<StateId> initial;

  // Edge, label and init lines may precede the declarations they refer to,
  // so they are resolved after the whole file has been read.
  struct Pending {
    std::size_t line;
    std::string key;
    std::vector<std::string> args;
    std::string subject;
  };
  std::vector<Pending> pending;

  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto colon = line.find(':');
    if (colon == std::string_view::npos) fail(lineno, "expected 'key: value'");
    const auto head = split_ws(line.substr(0, colon));
    const auto args = split_ws(line.substr(colon + 1));
    if (head.empty()) fail(lineno, "missing key before ':'");
    const std::string& key = head[0];
    if (key == "props" || key == "states") {
      if (head.size() != 1) fail(lineno, "unexpected token after '" + key + "'");
      for (const auto& a : args) {
        if (!is_identifier(a)) fail(lineno, "invalid identifier '" + a + "'");
        if (key == "props") {
          if (prop_index.count(a) != 0) fail(lineno, "duplicate proposition '" + a + "'");
          prop_index.emplace(a, static_cast<PropId>(props.size()));
          props.push_back(a);
        } else {
          if (state_index.count(a) != 0) fail(lineno, "duplicate state '" + a + "'");
          state_index.emplace(a, static_cast<StateId>(states.size()));
          states.push_back(a);
        }
      }
    } else if (key == "init" || key == "edge") {
      if (head.size() != 1) fail(lineno, "unexpected token after '" + key + "'");
      pending.push_back({lineno, key, args, {}});
    } else if (key == "label") {
      if (head.size() != 2) fail(lineno, "expected 'label <state>: <props>'");
      pending.push_back({lineno, key, args, head[1]});
    } else {
      fail(lineno, "unknown key '" + key + "'");
    }
  }

  if (props.empty()) throw ParseError("missing proposition declaration");
  if (states.empty()) throw ParseError("missing state declaration");
  labels.assign(states.size(), std::nullopt);

  auto state_of = [&](std::size_t line, const std::string& name) {
    auto it = state_index.find(name);
    if (it == state_index.end()) fail(line, "undeclared state '" + name + "'");
    return it->second;
  };
  for (const auto& p : pending) {
    if (p.key == "init") {
      if (p.args.size() != 1) fail(p.line, "init expects exactly one state");
      if (initial) fail(p.line, "duplicate init");
      initial = state_of(p.line, p.args[0]);
    } else if (p.key == "edge") {
      if (p.args.size() != 2) fail(p.line, "edge expects two states");
      edges.emplace_back(state_of(p.line, p.args[0]), state_of(p.line, p.args[1]));
    } else {
      const StateId s = state_of(p.line, p.subject);
      if (labels[s]) fail(p.line, "duplicate label for state '" + p.subject + "'");
      PropSet set;
      for (const auto& a : p.args) {
        auto it = prop_index.find(a);
        if (it == prop_index.end()) fail(p.line, "undeclared proposition '" + a + "'");
        set.insert(it->second);
      }
      labels[s] = std::move(set);
    }
  }
  if (!initial) throw ParseError("missing initial state");

  std::vector<PropSet> total;
  total.reserve(labels.size());
  for (auto& l : labels) total.push_back(l ? std::move(*l) : PropSet{});
  return KripkeStructure(std::move(props), std::move(states), std::move(edges), std::move(total), *initial);
}

KripkeStructure parse_model(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_model(in);
}

std::string serialize_model(const KripkeStructure& k) {
  std::ostringstream out;
  out << "props:";
  for (const auto& p : k.props()) out << ' ' << p;
  out << "\nstates:";
  for (const auto& s : k.states()) out << ' ' << s;
  out << "\ninit: " << k.state_name(k.initial()) << '\n';
  for (auto [a, b] : k.edges()) out << "edge: " << k.state_name(a) << ' ' << k.state_name(b) << '\n';
  for (StateId s = 0; s < k.num_states(); ++s) {
    out << "label " << k.state_name(s) << ':';
    for (PropId p : k.label(s).members()) out << ' ' << k.props()[p];
    out << '\n';
  }
  return out.str();
}

LabelWord label_word(const KripkeStructure& k, const Trace& t) {
  k.require_trace(t);
  LabelWord w;
  w.reserve(t.size());
  for (StateId s : t.steps) w.push_back(k.label(s));
  return w;
}

Trace star_concat(const Trace& lhs, const Trace& rhs) {
  if (lhs.steps.empty() || rhs.steps.empty()) throw PreconditionError("star_concat of an empty trace");
  if (lhs.last() != rhs.first()) throw PreconditionError("star_concat endpoint mismatch");
  Trace out;
  out.steps.reserve(lhs.size() + rhs.size() - 1);
  out.steps.assign(lhs.steps.begin(), lhs.steps.end() - 1);
  out.steps.insert(out.steps.end(), rhs.steps.begin(), rhs.steps.end());
  return out;
}

std::vector<Trace> proper_prefixes(const Trace& t) {
  std::vector<Trace> out;
  for (std::size_t n = 1; n < t.size(); ++n)
    out.emplace_back(std::vector<StateId>(t.steps.begin(), t.steps.begin() + static_cast<std::ptrdiff_t>(n)));
  return out;
}

std::vector<Trace> proper_suffixes(const Trace& t) {
  std::vector<Trace> out;
  // Suff(w) = { w(i, n) | 2 <= i <= n }, listed by start position.
  for (std::size_t i = 1; i < t.size(); ++i)
    out.emplace_back(std::vector<StateId>(t.steps.begin() + static_cast<std::ptrdiff_t>(i), t.steps.end()));
  return out;
}

Trace reversed(const Trace& t) { return Trace(std::vector<StateId>(t.steps.rbegin(), t.steps.rend())); }

KripkeStructure reverse(const KripkeStructure& k) {
  std::vector<std::pair<StateId, StateId>> edges;
  for (auto [a, b] : k.edges()) edges.emplace_back(b, a);
  std::vector<PropSet> labels;
  for (StateId s = 0; s < k.num_states(); ++s) labels.push_back(k.label(s));
  return KripkeStructure(k.props(), k.states(), std::move(edges), std::move(labels), k.initial());
}

}  // namespace hsmc
