#include "hsmc/summary.hpp"

#include <limits>

#include "hsmc/error.hpp"

namespace hsmc {

std::size_t saturate(const BigInt& v) noexcept {
  if (v < 0) return 0;
  if (v > BigInt(std::numeric_limits<std::size_t>::max())) return std::numeric_limits<std::size_t>::max();
  return static_cast<std::size_t>(v);
}

SpecSet::SpecSet(std::vector<RegExpr> exprs, const std::vector<std::string>& props) {
  offsets_.push_back(0);
  for (auto& r : exprs) {
    if (index_of(r)) continue;
    automata_.push_back(compile(r, props));
    offsets_.push_back(offsets_.back() + automata_.back().num_states());
    size_ += r.size();
    exprs_.push_back(std::move(r));
  }
}

std::optional<std::size_t> SpecSet::index_of(const RegExpr& r) const {
  for (std::size_t i = 0; i < exprs_.size(); ++i)
    if (exprs_[i] == r) return i;
  return std::nullopt;
}

bool Summary::accepts(const SpecSet& spec, std::size_t i) const {
  const Nfa& a = spec.automaton(i);
  for (std::size_t q = 0; q < a.num_states(); ++q)
    if (a.is_accepting(q) && pairs[i].test(0, q)) return true;
  return false;
}

std::vector<std::pair<std::size_t, std::size_t>> Summary::global_pairs(const SpecSet& spec) const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const std::size_t off = spec.state_offset(i);
    for (auto [q, r] : pairs[i].pairs()) out.emplace_back(off + q, off + r);
  }
  return out;
}

std::size_t Summary::hash() const noexcept {
  std::size_t h = (static_cast<std::size_t>(first) << 32) ^ last;
  for (const auto& m : pairs) h = (h ^ m.hash()) * 0x100000001b3ull;
  return h;
}

Summary summary_of(const KripkeStructure& k, const SpecSet& spec, const Trace& rho) {
  k.require_trace(rho);
  Summary s;
  s.first = rho.first();
  s.last = rho.first();
  for (std::size_t i = 0; i < spec.count(); ++i) s.pairs.push_back(step_pairs(spec.automaton(i), k.label(rho.first())));
  for (std::size_t p = 1; p < rho.size(); ++p) s = extend_summary(s, spec, k.label(rho[p]), rho[p]);
  return s;
}

Summary extend_summary(const Summary& s, const SpecSet& spec, const PropSet& letter, StateId next_state) {
  Summary out;
  out.first = s.first;
  out.last = next_state;
  out.pairs.reserve(s.pairs.size());
  for (std::size_t i = 0; i < spec.count(); ++i)
    out.pairs.push_back(s.pairs[i].compose(step_pairs(spec.automaton(i), letter)));
  return out;
}

BigInt summary_count_bound(const KripkeStructure& k, const SpecSet& spec) {
  const BigInt states = k.num_states();
  const auto e = static_cast<unsigned>(4 * spec.size() * spec.size());
  return states * states * (BigInt(1) << e);
}

SummaryTable::SummaryTable(const KripkeStructure& k, const SpecSet& spec)
    : k_(k), spec_(spec), single_(k.num_states()) {
  step_.resize(k.num_states());
  for (StateId s = 0; s < k.num_states(); ++s)
    for (std::size_t i = 0; i < spec.count(); ++i) step_[s].push_back(step_pairs(spec.automaton(i), k.label(s)));
}

SummaryId SummaryTable::intern_locked(Summary s) {
  auto it = index_.find(s);
  if (it != index_.end()) return it->second;
  const auto id = static_cast<SummaryId>(store_.size());
  store_.push_back(s);
  index_.emplace(std::move(s), id);
  return id;
}

SummaryId SummaryTable::intern(Summary s) {
  std::lock_guard lock(mu_);
  return intern_locked(std::move(s));
}

const Summary& SummaryTable::get(SummaryId id) const {
  std::lock_guard lock(mu_);
  return store_[id];
}

std::size_t SummaryTable::size() const {
  std::lock_guard lock(mu_);
  return store_.size();
}

SummaryId SummaryTable::of_state(StateId s) {
  std::lock_guard lock(mu_);
  if (single_[s]) return *single_[s];
  Summary sum;
  sum.first = s;
  sum.last = s;
  sum.pairs = step_[s];
  const SummaryId id = intern_locked(std::move(sum));
  single_[s] = id;
  return id;
}

SummaryId SummaryTable::extend(SummaryId id, StateId s) {
  const std::uint64_t key = (static_cast<std::uint64_t>(id) << 32) | s;
  std::lock_guard lock(mu_);
  if (auto it = ext_.find(key); it != ext_.end()) return it->second;
  const Summary& base = store_[id];
  if (!k_.has_edge(base.last, s)) throw PreconditionError("extension does not follow an edge of the structure");
  Summary out;
  out.first = base.first;
  out.last = s;
  out.pairs.reserve(base.pairs.size());
  for (std::size_t i = 0; i < base.pairs.size(); ++i) out.pairs.push_back(base.pairs[i].compose(step_[s][i]));
  const SummaryId r = intern_locked(std::move(out));
  ext_.emplace(key, r);
  return r;
}

SummaryId SummaryTable::of_trace(const Trace& rho) {
  SummaryId id = of_state(rho.first());
  for (std::size_t p = 1; p < rho.size(); ++p) id = extend(id, rho[p]);
  return id;
}

std::vector<SummaryId> SummaryTable::prefixes(const Trace& rho) {
  std::vector<SummaryId> out;
  out.reserve(rho.size());
  out.push_back(of_state(rho.first()));
  for (std::size_t p = 1; p < rho.size(); ++p) out.push_back(extend(out.back(), rho[p]));
  return out;
}

bool SummaryTable::accepts(SummaryId id, std::size_t spec_index) const { return get(id).accepts(spec_, spec_index); }

}  // namespace hsmc
