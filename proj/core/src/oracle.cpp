#include "hsmc/oracle.hpp"

#include <unordered_map>

#include "hsmc/error.hpp"
#include "hsmc/relang.hpp"

namespace hsmc {

struct Oracle::Impl {
  struct Slot {
    HsFormula keep_alive;
    std::vector<std::int8_t> value;  // -1 unknown
  };

  const KripkeStructure& k;
  std::size_t L;

  std::vector<Trace> traces;
  std::unordered_map<Trace, std::uint32_t, TraceHash> ids;

  // traces of length <= L leaving / reaching a state
  std::unordered_map<StateId, std::vector<std::uint32_t>> from, to;
  std::unordered_map<std::uint32_t, std::vector<std::uint32_t>> right_ext, left_ext, prefixes, suffixes;

  std::unordered_map<const void*, Slot> memo;
  std::unordered_map<RegExpr, Nfa, RegExprHash> nfas;

  Impl(const KripkeStructure& kk, std::size_t l) : k(kk), L(l) {
    if (L == 0) throw PreconditionError("oracle trace bound must be positive");
  }

  std::uint32_t id_of(const Trace& t) {
    auto [it, fresh] = ids.emplace(t, static_cast<std::uint32_t>(traces.size()));
    if (fresh) traces.push_back(t);
    return it->second;
  }

  // All traces of length <= L whose first (forward) or last (backward) state is s.
  std::vector<std::uint32_t> anchored(StateId s, bool forward) {
    std::vector<std::uint32_t> out;
    std::vector<Trace> frontier{Trace{s}};
    while (!frontier.empty()) {
      std::vector<Trace> next;
      for (const Trace& t : frontier) {
        out.push_back(id_of(t));
        if (t.size() == L) continue;
        if (forward) {
          for (StateId n : k.successors(t.last())) {
            Trace u = t;
            u.steps.push_back(n);
            next.push_back(std::move(u));
          }
        } else {
          for (StateId p : k.predecessors(t.first())) {
            Trace u{p};
            u.steps.insert(u.steps.end(), t.steps.begin(), t.steps.end());
            next.push_back(std::move(u));
          }
        }
      }
      frontier = std::move(next);
    }
    return out;
  }

  const std::vector<std::uint32_t>& from_state(StateId s) {
    auto it = from.find(s);
    if (it == from.end()) it = from.emplace(s, anchored(s, true)).first;
    return it->second;
  }

  const std::vector<std::uint32_t>& to_state(StateId s) {
    auto it = to.find(s);
    if (it == to.end()) it = to.emplace(s, anchored(s, false)).first;
    return it->second;
  }

  std::vector<std::uint32_t> list(std::uint32_t t, Modality m) {
    auto& cache = m == Modality::Bbar ? right_ext : m == Modality::Ebar ? left_ext : m == Modality::B ? prefixes : suffixes;
    if (auto it = cache.find(t); it != cache.end()) return it->second;
    std::vector<std::uint32_t> out;
    const Trace rho = traces[t];
    const std::size_t n = rho.size();
    switch (m) {
      case Modality::B:
        for (std::size_t len = 1; len < n; ++len)
          out.push_back(id_of(Trace(std::vector<StateId>(rho.steps.begin(), rho.steps.begin() + static_cast<std::ptrdiff_t>(len)))));
        break;
      case Modality::E:
        for (std::size_t start = 1; start < n; ++start)
          out.push_back(id_of(Trace(std::vector<StateId>(rho.steps.begin() + static_cast<std::ptrdiff_t>(start), rho.steps.end()))));
        break;
      case Modality::Bbar:
        for (std::uint32_t c : std::vector<std::uint32_t>(from_state(rho.last()))) {
          const Trace& ct = traces[c];
          if (ct.size() < 2 || n + ct.size() - 1 > L) continue;
          Trace u = rho;
          u.steps.insert(u.steps.end(), ct.steps.begin() + 1, ct.steps.end());
          out.push_back(id_of(u));
        }
        break;
      case Modality::Ebar:
        for (std::uint32_t c : std::vector<std::uint32_t>(to_state(rho.first()))) {
          const Trace& ct = traces[c];
          if (ct.size() < 2 || n + ct.size() - 1 > L) continue;
          Trace u(std::vector<StateId>(ct.steps.begin(), ct.steps.end() - 1));
          u.steps.insert(u.steps.end(), rho.steps.begin(), rho.steps.end());
          out.push_back(id_of(u));
        }
        break;
      default:
        break;
    }
    cache.emplace(t, out);
    return out;
  }

  bool atom(const RegExpr& r, std::uint32_t t) {
    auto it = nfas.find(r);
    if (it == nfas.end()) it = nfas.emplace(r, compile(r, k.props())).first;
    return accepts(it->second, label_word(k, traces[t]));
  }

  bool eval(const HsFormula& f, std::uint32_t t) {
    auto it = memo.find(f.node_address());
    if (it == memo.end()) it = memo.emplace(f.node_address(), Slot{f, {}}).first;
    {
      auto& v = it->second.value;
      if (v.size() > t && v[t] >= 0) return v[t] != 0;
    }
    const bool r = compute(f, t);
    auto& v = memo.find(f.node_address())->second.value;
    if (v.size() <= t) v.resize(traces.size(), -1);
    v[t] = r ? 1 : 0;
    return r;
  }

  bool quantify(Modality m, const HsFormula& body, std::uint32_t t, bool existential) {
    std::vector<std::uint32_t> over;
    if (m == Modality::A) over = from_state(traces[t].last());
    else if (m == Modality::Abar) over = to_state(traces[t].first());
    else over = list(t, m);
    for (std::uint32_t u : over)
      if (eval(body, u) == existential) return existential;
    return !existential;
  }

  bool compute(const HsFormula& f, std::uint32_t t) {
    switch (f.kind()) {
      case HsFormula::Kind::Atom:
        return atom(f.regex(), t);
      case HsFormula::Kind::NegAtom:
        return !atom(f.regex(), t);
      case HsFormula::Kind::Not:
        return !eval(f.operand(), t);
      case HsFormula::Kind::And:
        return eval(f.lhs(), t) && eval(f.rhs(), t);
      case HsFormula::Kind::Or:
        return eval(f.lhs(), t) || eval(f.rhs(), t);
      case HsFormula::Kind::Diamond:
        return quantify(f.modality(), f.operand(), t, true);
      case HsFormula::Kind::Box:
        return quantify(f.modality(), f.operand(), t, false);
    }
    return false;
  }
};

Oracle::Oracle(const KripkeStructure& k, std::size_t max_trace) : impl_(std::make_unique<Impl>(k, max_trace)) {}
Oracle::~Oracle() = default;

std::size_t Oracle::bound() const noexcept { return impl_->L; }

bool Oracle::holds(const HsFormula& f, const Trace& rho) {
  impl_->k.require_trace(rho);
  return impl_->eval(f, impl_->id_of(rho));
}

std::optional<Trace> Oracle::counterexample(const HsFormula& f) {
  for (std::uint32_t t : std::vector<std::uint32_t>(impl_->from_state(impl_->k.initial())))
    if (!impl_->eval(f, t)) return impl_->traces[t];
  return std::nullopt;
}

bool oracle_holds(const KripkeStructure& k, const Trace& rho, const HsFormula& f, std::size_t max_trace) {
  return Oracle(k, max_trace).holds(f, rho);
}

bool oracle_model_check(const KripkeStructure& k, const HsFormula& f, std::size_t max_trace) {
  return Oracle(k, max_trace).model_check(f);
}

}  // namespace hsmc
