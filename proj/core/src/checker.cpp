#include "hsmc/checker.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>
#include <utility>

#include "hsmc/error.hpp"

namespace hsmc {

bool is_universal(const WellFormedSet& w) {
  for (const auto& o : w) {
    const HsFormula& f = o.formula;
    if (f.kind() != HsFormula::Kind::Box) return false;
    if (f.modality() != Modality::Bbar && f.modality() != Modality::Ebar) return false;
  }
  return true;
}

bool AaLabeling::contains(StateId s, const HsFormula& f) const {
  const auto& m = members.at(s);
  return std::find(m.begin(), m.end(), f) != m.end();
}

namespace {

using TraceId = std::uint32_t;
using FormulaId = std::uint32_t;
constexpr FormulaId kNoFormula = ~FormulaId{0};

enum Mode : int { kTrue = 0, kFalse = 1 };

struct Result {
  bool value;
  std::uint8_t switches;
};

bool trace_less(const Trace& a, const Trace& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.steps < b.steps;
}

}  // namespace

struct CheckSession::Impl {
  struct FNode {
    HsFormula f;
    HsFormula::Kind kind;
    Modality modality;
    FormulaId a = kNoFormula;
    FormulaId b = kNoFormula;
    int atom = -1;
    FormulaId dual = kNoFormula;
  };

  const KripkeStructure& k;
  SpecSet spec;
  SummaryTable sums;
  std::size_t h;
  CheckerConfig cfg;
  BigInt bound;
  bool is_complete;
  std::size_t max_len;

  std::vector<Trace> traces;
  std::unordered_map<Trace, TraceId, TraceHash> trace_ids;
  std::vector<std::vector<TraceId>> prefix_cache;
  std::vector<std::uint8_t> prefix_known;
  std::vector<std::uint8_t> counted;

  std::vector<FNode> fnodes;
  std::unordered_map<HsFormula, FormulaId, HsFormulaHash> fids;

  // memo[mode][fid][tid]: bit 0 known, bit 1 value, bits 2.. switches below
  std::vector<std::vector<std::uint8_t>> memo[2];
  // acc[atom][tid]: 0 unknown, 1 rejected, 2 accepted
  std::vector<std::vector<std::uint8_t>> acc;
  // lab[fid][state]: 0 unknown, 1 absent, 2 present
  std::vector<std::vector<std::uint8_t>> lab;

  std::map<std::pair<StateId, Direction>, std::vector<TraceId>> certs;
  std::unordered_map<std::uint64_t, std::vector<TraceId>> wits;

  CheckStats st;

  Impl(const KripkeStructure& kk, std::vector<RegExpr> sp, std::size_t hh, CheckerConfig c)
      : k(kk), spec(std::move(sp), kk.props()), sums(kk, spec), h(hh), cfg(c) {
    bound = certificate_bound(k, spec, h);
    const std::size_t theoretical_max = saturate(bound - 1);
    if (cfg.max_cert_len && *cfg.max_cert_len == 0) throw PreconditionError("certificate length cap must be positive");
    is_complete = !cfg.max_cert_len || *cfg.max_cert_len >= theoretical_max;
    max_len = is_complete ? theoretical_max : *cfg.max_cert_len;
    acc.resize(spec.count());
  }

  // ---- traces -------------------------------------------------------------

  TraceId intern(const Trace& t) {
    auto it = trace_ids.find(t);
    if (it != trace_ids.end()) return it->second;
    const auto id = static_cast<TraceId>(traces.size());
    traces.push_back(t);
    trace_ids.emplace(t, id);
    prefix_cache.emplace_back();
    prefix_known.push_back(0);
    counted.push_back(0);
    return id;
  }

  void count_certificate(TraceId t) {
    if (!counted[t]) {
      counted[t] = 1;
      ++st.certificates_explored;
    }
  }

  const std::vector<TraceId>& proper_prefix_ids(TraceId t) {
    if (!prefix_known[t]) {
      std::vector<TraceId> out;
      const std::size_t n = traces[t].size();
      for (std::size_t len = 1; len < n; ++len) {
        Trace p(std::vector<StateId>(traces[t].steps.begin(), traces[t].steps.begin() + static_cast<std::ptrdiff_t>(len)));
        out.push_back(intern(p));
      }
      prefix_cache[t] = std::move(out);
      prefix_known[t] = 1;
    }
    return prefix_cache[t];
  }

  Trace contracted(const Trace& t) {
    Contraction c = contract_trace(sums, t, h);
    st.contractions += c.steps;
    if (c.trace.size() > max_len)
      throw InvariantViolation("contracted certificate of length " + std::to_string(c.trace.size()) +
                               " exceeds the certificate bound");
    return std::move(c.trace);
  }

  // ---- formulas -----------------------------------------------------------

  FormulaId intern(const HsFormula& f) {
    auto it = fids.find(f);
    if (it != fids.end()) return it->second;
    FNode n{f, f.kind(), f.is_modal() ? f.modality() : Modality::A};
    switch (f.kind()) {
      case HsFormula::Kind::Atom:
      case HsFormula::Kind::NegAtom: {
        auto idx = spec.index_of(f.regex());
        if (!idx) throw PreconditionError("atom {" + f.regex().to_string() + "} is not in the specification set");
        n.atom = static_cast<int>(*idx);
        break;
      }
      case HsFormula::Kind::Not:
        throw PreconditionError("formula is not in positive normal form");
      case HsFormula::Kind::And:
      case HsFormula::Kind::Or:
        n.a = intern(f.lhs());
        n.b = intern(f.rhs());
        break;
      case HsFormula::Kind::Diamond:
      case HsFormula::Kind::Box:
        if (!(mask_of(f.modality()) & kPrefixFragment))
          throw PreconditionError("modality <" + modality_name(f.modality()) + "> is outside the checked fragment");
        n.a = intern(f.operand());
        break;
    }
    const auto id = static_cast<FormulaId>(fnodes.size());
    fnodes.push_back(std::move(n));
    fids.emplace(f, id);
    memo[0].emplace_back();
    memo[1].emplace_back();
    lab.emplace_back();
    return id;
  }

  FormulaId dual_of(FormulaId f) {
    if (fnodes[f].dual == kNoFormula) {
      const FormulaId d = intern(dual(fnodes[f].f));
      fnodes[f].dual = d;
      fnodes[d].dual = f;
    }
    return fnodes[f].dual;
  }

  // ---- certificates -------------------------------------------------------

  const std::vector<TraceId>& certificates(StateId anchor, Direction d) {
    const auto key = std::make_pair(anchor, d);
    if (auto it = certs.find(key); it != certs.end()) return it->second;

    std::vector<Trace> found;
    if (!is_complete) {
      std::vector<Trace> level{Trace{anchor}};
      while (!level.empty()) {
        found.insert(found.end(), level.begin(), level.end());
        if (level.front().size() >= max_len) break;
        std::vector<Trace> next;
        for (const Trace& t : level) {
          if (d == Direction::Forward) {
            for (StateId s : k.successors(t.last())) {
              Trace u = t;
              u.steps.push_back(s);
              next.push_back(std::move(u));
            }
          } else {
            for (StateId s : k.predecessors(t.first())) {
              Trace u;
              u.steps.reserve(t.size() + 1);
              u.steps.push_back(s);
              u.steps.insert(u.steps.end(), t.steps.begin(), t.steps.end());
              next.push_back(std::move(u));
            }
          }
        }
        level = std::move(next);
      }
    } else {
      // breadth-first exploration of the quotient under contract-on-extension
      std::unordered_set<Trace, TraceHash> visited{Trace{anchor}};
      std::deque<Trace> queue{Trace{anchor}};
      while (!queue.empty()) {
        Trace t = std::move(queue.front());
        queue.pop_front();
        const auto& nbrs = d == Direction::Forward ? k.successors(t.last()) : k.predecessors(t.first());
        for (StateId s : nbrs) {
          Trace u;
          if (d == Direction::Forward) {
            u = t;
            u.steps.push_back(s);
          } else {
            u.steps.push_back(s);
            u.steps.insert(u.steps.end(), t.steps.begin(), t.steps.end());
          }
          u = contracted(u);
          if (visited.insert(u).second) queue.push_back(std::move(u));
        }
        found.push_back(std::move(t));
      }
    }
    std::sort(found.begin(), found.end(), trace_less);
    std::vector<TraceId> ids;
    ids.reserve(found.size());
    for (const Trace& t : found) {
      const TraceId id = intern(t);
      count_certificate(id);
      ids.push_back(id);
    }
    return certs.emplace(key, std::move(ids)).first->second;
  }

  const std::vector<TraceId>& witnesses(TraceId rho, Modality x) {
    const std::uint64_t key = (static_cast<std::uint64_t>(rho) << 1) | (x == Modality::Ebar ? 1u : 0u);
    if (auto it = wits.find(key); it != wits.end()) return it->second;
    const bool right = x == Modality::Bbar;
    const StateId anchor = right ? traces[rho].last() : traces[rho].first();
    const std::vector<TraceId> ext = certificates(anchor, right ? Direction::Forward : Direction::Backward);
    std::vector<TraceId> out;
    std::unordered_set<TraceId> seen;
    for (TraceId c : ext) {
      const Trace& ct = traces[c];
      if (ct.size() < 2) continue;
      const Trace& r = traces[rho];
      if (!is_complete && r.size() + ct.size() - 1 > max_len) continue;
      Trace w = right ? star_concat(r, ct) : star_concat(ct, r);
      if (is_complete) w = contracted(w);
      const TraceId id = intern(w);
      if (seen.insert(id).second) {
        count_certificate(id);
        out.push_back(id);
      }
    }
    return wits.emplace(key, std::move(out)).first->second;
  }

  // ---- evaluation ---------------------------------------------------------

  bool accepts_atom(int atom, TraceId t) {
    auto& row = acc[static_cast<std::size_t>(atom)];
    if (row.size() <= t) row.resize(traces.size(), 0);
    if (row[t] == 0) row[t] = accepts(spec.automaton(static_cast<std::size_t>(atom)), label_word(k, traces[t])) ? 2 : 1;
    return row[t] == 2;
  }

  void note_root(std::uint8_t sw) { st.mode_switches = std::max<std::size_t>(st.mode_switches, sw); }

  bool labeled(FormulaId f, StateId s) {
    auto& row = lab[f];
    if (row.empty()) row.assign(k.num_states(), 0);
    if (row[s] != 0) return row[s] == 2;
    const FNode& n = fnodes[f];
    const bool diamond = n.kind == HsFormula::Kind::Diamond;
    const FormulaId body = n.a;
    const auto dir = n.modality == Modality::A ? Direction::Forward : Direction::Backward;
    const std::vector<TraceId> cs = certificates(s, dir);
    bool value = !diamond;
    for (TraceId c : cs) {
      const Result r = eval(kTrue, body, c);
      note_root(r.switches);
      if (r.value == diamond) {
        value = diamond;
        break;
      }
    }
    lab[f][s] = value ? 2 : 1;
    return value;
  }

  Result eval(int mode, FormulaId f, TraceId t) {
    {
      auto& row = memo[mode][f];
      if (row.size() > t && (row[t] & 1)) return {(row[t] & 2) != 0, static_cast<std::uint8_t>(row[t] >> 2)};
    }
    ++st.obligations;
    const Result r = compute(mode, f, t);
    auto& row = memo[mode][f];
    if (row.size() <= t) row.resize(std::max<std::size_t>(traces.size(), t + 1), 0);
    row[t] = static_cast<std::uint8_t>(1 | (r.value ? 2 : 0) | (std::min<unsigned>(r.switches, 63) << 2));
    return r;
  }

  template <typename Ids>
  Result quantify(int mode, FormulaId body, const Ids& ids, bool existential) {
    std::uint8_t sw = 0;
    for (TraceId c : ids) {
      const Result r = eval(mode, body, c);
      sw = std::max(sw, r.switches);
      if (r.value == existential) return {existential, sw};
    }
    return {!existential, sw};
  }

  Result compute(int mode, FormulaId f, TraceId t) {
    const FNode n = fnodes[f];
    using K = HsFormula::Kind;
    switch (n.kind) {
      case K::Atom:
        return {accepts_atom(n.atom, t), 0};
      case K::NegAtom:
        return {!accepts_atom(n.atom, t), 0};
      case K::And:
      case K::Or: {
        const bool conj = n.kind == K::And;
        const Result a = eval(mode, n.a, t);
        if (a.value != conj) return a;
        const Result b = eval(mode, n.b, t);
        return {b.value, std::max(a.switches, b.switches)};
      }
      case K::Not:
        break;
      case K::Diamond:
      case K::Box: {
        const bool diamond = n.kind == K::Diamond;
        switch (n.modality) {
          case Modality::A:
            return {labeled(f, traces[t].last()), 0};
          case Modality::Abar:
            return {labeled(f, traces[t].first()), 0};
          case Modality::B: {
            const std::vector<TraceId> ps = proper_prefix_ids(t);
            return quantify(mode, n.a, ps, diamond);
          }
          case Modality::Bbar:
          case Modality::Ebar: {
            if (!diamond) {
              // universal obligation: switch mode on the dual
              const FormulaId d = dual_of(f);
              const Result r = eval(1 - mode, d, t);
              return {!r.value, static_cast<std::uint8_t>(r.switches + 1)};
            }
            const std::vector<TraceId> ws = witnesses(t, n.modality);
            return quantify(mode, n.a, ws, true);
          }
          case Modality::E:
            break;
        }
        break;
      }
    }
    throw InvariantViolation("unexpected formula node in evaluation");
  }

  TraceId checked_trace(const Trace& rho) {
    k.require_trace(rho);
    return intern(rho);
  }

  FormulaId checked_formula(const HsFormula& f) {
    if (!is_pnf(f)) throw PreconditionError("formula is not in positive normal form");
    if (!in_fragment(f, kPrefixFragment)) throw PreconditionError("formula is outside the A Abar B Bbar Ebar fragment");
    if (depth_b(f) > h)
      throw PreconditionError("formula B-depth " + std::to_string(depth_b(f)) + " exceeds the session depth " +
                              std::to_string(h));
    return intern(f);
  }

  CheckStats snapshot() const {
    CheckStats s = st;
    s.summaries = sums.size();
    return s;
  }
};

CheckSession::CheckSession(const KripkeStructure& k, std::vector<RegExpr> spec, std::size_t h, CheckerConfig cfg)
    : impl_(std::make_unique<Impl>(k, std::move(spec), h, cfg)) {}

CheckSession::~CheckSession() = default;

const KripkeStructure& CheckSession::structure() const noexcept { return impl_->k; }
const SpecSet& CheckSession::spec() const noexcept { return impl_->spec; }
std::size_t CheckSession::depth() const noexcept { return impl_->h; }
bool CheckSession::complete() const noexcept { return impl_->is_complete; }
std::size_t CheckSession::max_certificate_length() const noexcept { return impl_->max_len; }
const BigInt& CheckSession::theoretical_bound() const noexcept { return impl_->bound; }

std::vector<Trace> CheckSession::certificates(StateId anchor, Direction d) {
  if (anchor >= impl_->k.num_states()) throw PreconditionError("anchor state out of range");
  std::vector<Trace> out;
  for (TraceId id : impl_->certificates(anchor, d)) out.push_back(impl_->traces[id]);
  return out;
}

std::vector<Trace> CheckSession::witnesses(const Trace& rho, Modality x) {
  if (x != Modality::Bbar && x != Modality::Ebar) throw PreconditionError("witnesses exist only for Bbar and Ebar");
  const TraceId t = impl_->checked_trace(rho);
  std::vector<Trace> out;
  for (TraceId id : impl_->witnesses(t, x)) out.push_back(impl_->traces[id]);
  return out;
}

bool CheckSession::holds(const HsFormula& f, const Trace& rho) {
  const FormulaId fid = impl_->checked_formula(f);
  const TraceId t = impl_->checked_trace(rho);
  const Result r = impl_->eval(kTrue, fid, t);
  impl_->note_root(r.switches);
  return r.value;
}

bool CheckSession::check_true(const WellFormedSet& w) {
  for (const auto& o : w) {
    const FormulaId fid = impl_->checked_formula(o.formula);
    const TraceId t = impl_->checked_trace(o.certificate);
    const Result r = impl_->eval(kTrue, fid, t);
    impl_->note_root(r.switches);
    if (!r.value) return false;
  }
  return true;
}

bool CheckSession::check_false(const WellFormedSet& w) {
  for (const auto& o : w) {
    const FormulaId fid = impl_->checked_formula(o.formula);
    const TraceId t = impl_->checked_trace(o.certificate);
    const Result r = impl_->eval(kFalse, fid, t);
    impl_->note_root(r.switches);
    if (!r.value) return true;
  }
  return false;
}

AaLabeling CheckSession::compute_labeling(const HsFormula& phi) {
  impl_->checked_formula(phi);
  std::vector<HsFormula> aa = aa_set(phi);
  std::stable_sort(aa.begin(), aa.end(), [](const HsFormula& a, const HsFormula& b) { return a.size() < b.size(); });
  AaLabeling out;
  out.members.resize(impl_->k.num_states());
  for (StateId s = 0; s < impl_->k.num_states(); ++s)
    for (const auto& g : aa)
      if (impl_->labeled(impl_->intern(g), s)) out.members[s].push_back(g);
  return out;
}

Verdict CheckSession::check_initial(const HsFormula& phi, Direction d) {
  const FormulaId fid = impl_->checked_formula(phi);
  const std::vector<TraceId> initial = impl_->certificates(impl_->k.initial(), d);
  // switches are reported per check; the session keeps the overall maximum
  const std::size_t before = std::exchange(impl_->st.mode_switches, 0);
  Verdict v;
  v.satisfied = true;
  v.complete = impl_->is_complete;
  for (TraceId c : initial) {
    const Result r = impl_->eval(kTrue, fid, c);
    impl_->note_root(r.switches);
    if (!r.value) {
      v.satisfied = false;
      v.trace = impl_->traces[c];
      break;
    }
    if (impl_->cfg.witness) v.trace = impl_->traces[c];
  }
  v.stats = impl_->snapshot();
  impl_->st.mode_switches = std::max(before, v.stats.mode_switches);
  return v;
}

CheckStats CheckSession::stats() const { return impl_->snapshot(); }

Verdict model_check(const KripkeStructure& k, const HsFormula& phi, const CheckerConfig& cfg) {
  const HsFormula p = to_pnf(phi);
  if (in_fragment(p, kPrefixFragment)) {
    CheckSession session(k, formula_atoms(p), depth_b(p), cfg);
    return session.check_initial(p);
  }
  if (in_fragment(p, kSuffixFragment)) {
    // K |= phi  iff  every trace of rev(K) ending at s0 satisfies mirror(phi)
    const KripkeStructure rk = reverse(k);
    const HsFormula m = mirror(p);
    CheckSession session(rk, formula_atoms(m), depth_b(m), cfg);
    Verdict v = session.check_initial(m, Direction::Backward);
    if (v.trace) v.trace = reversed(*v.trace);
    return v;
  }
  throw PreconditionError("formula " + phi.to_string() +
                          " uses both B and E; only the A Abar B Bbar Ebar fragment and its mirror are supported");
}

}  // namespace hsmc
