#include "support.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "hsmc/error.hpp"

namespace hsmc::testing {

KripkeStructure k0() {
  return KripkeStructure({"p", "q"}, {"s0", "s1"}, {{0, 1}, {1, 0}, {1, 1}}, {PropSet::of({0}), PropSet::of({1})}, 0);
}

KripkeStructure single_loop(const std::vector<std::string>& label) {
  std::vector<std::string> props{"p", "q"};
  PropSet l;
  for (const auto& name : label) {
    auto it = std::find(props.begin(), props.end(), name);
    if (it == props.end()) {
      props.push_back(name);
      it = props.end() - 1;
    }
    l.insert(static_cast<PropId>(it - props.begin()));
  }
  return KripkeStructure(props, {"s0"}, {{0, 0}}, {l}, 0);
}

namespace {

bool prop_holds(const PropFormula& f, const std::vector<std::string>& props, const PropSet& letter) {
  switch (f.kind()) {
    case PropFormula::Kind::True:
      return true;
    case PropFormula::Kind::False:
      return false;
    case PropFormula::Kind::Atom: {
      const auto it = std::find(props.begin(), props.end(), f.name());
      return it != props.end() && letter.contains(static_cast<PropId>(it - props.begin()));
    }
    case PropFormula::Kind::Not:
      return !prop_holds(f.lhs(), props, letter);
    case PropFormula::Kind::And:
      return prop_holds(f.lhs(), props, letter) && prop_holds(f.rhs(), props, letter);
    case PropFormula::Kind::Or:
      return prop_holds(f.lhs(), props, letter) || prop_holds(f.rhs(), props, letter);
  }
  return false;
}

std::set<std::size_t> ends(const RegExpr& r, const std::vector<std::string>& props, const LabelWord& w, std::size_t i) {
  switch (r.kind()) {
    case RegExpr::Kind::Epsilon:
      return {i};
    case RegExpr::Kind::Test:
      if (i < w.size() && prop_holds(r.formula(), props, w[i])) return {i + 1};
      return {};
    case RegExpr::Kind::Union: {
      auto a = ends(r.lhs(), props, w, i);
      auto b = ends(r.rhs(), props, w, i);
      a.insert(b.begin(), b.end());
      return a;
    }
    case RegExpr::Kind::Concat: {
      std::set<std::size_t> out;
      for (std::size_t j : ends(r.lhs(), props, w, i)) {
        auto b = ends(r.rhs(), props, w, j);
        out.insert(b.begin(), b.end());
      }
      return out;
    }
    case RegExpr::Kind::Star: {
      std::set<std::size_t> out{i};
      std::vector<std::size_t> todo{i};
      while (!todo.empty()) {
        const std::size_t j = todo.back();
        todo.pop_back();
        for (std::size_t e : ends(r.body(), props, w, j))
          if (out.insert(e).second) todo.push_back(e);
      }
      return out;
    }
  }
  return {};
}

}  // namespace

bool regex_match(const RegExpr& r, const std::vector<std::string>& props, const LabelWord& w) {
  return ends(r, props, w, 0).count(w.size()) != 0;
}

std::vector<RegExpr> regex_leaves(const std::vector<std::string>& props) {
  std::vector<RegExpr> out{RegExpr::epsilon(), RegExpr::test(PropFormula::truth()),
                           RegExpr::test(PropFormula::falsity())};
  for (const auto& p : props) out.push_back(RegExpr::test(PropFormula::atom(p)));
  out.push_back(RegExpr::test(PropFormula::negation(PropFormula::atom(props[0]))));
  if (props.size() > 1)
    out.push_back(RegExpr::test(PropFormula::conjunction(PropFormula::atom(props[0]), PropFormula::atom(props[1]))));
  return out;
}

std::vector<RegExpr> all_regexes(const std::vector<RegExpr>& leaves, std::size_t max_size) {
  std::vector<std::vector<RegExpr>> by_size(max_size + 1);
  if (max_size >= 1) by_size[1] = leaves;
  for (std::size_t n = 2; n <= max_size; ++n) {
    for (const auto& a : by_size[n - 1]) by_size[n].push_back(RegExpr::star(a));
    for (std::size_t l = 1; l + 1 < n; ++l)
      for (const auto& a : by_size[l])
        for (const auto& b : by_size[n - 1 - l]) {
          by_size[n].push_back(RegExpr::alt(a, b));
          by_size[n].push_back(RegExpr::concat(a, b));
        }
  }
  std::vector<RegExpr> out;
  for (auto& v : by_size) out.insert(out.end(), v.begin(), v.end());
  return out;
}

std::vector<LabelWord> all_label_words(std::size_t num_props, std::size_t max_len) {
  std::vector<PropSet> letters;
  for (std::uint32_t bits = 0; bits < (1u << num_props); ++bits) {
    PropSet s;
    for (PropId p = 0; p < num_props; ++p)
      if ((bits >> p) & 1u) s.insert(p);
    letters.push_back(s);
  }
  std::vector<LabelWord> out{LabelWord{}};
  std::vector<LabelWord> layer{LabelWord{}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<LabelWord> next;
    for (const auto& w : layer)
      for (const auto& l : letters) {
        LabelWord u = w;
        u.push_back(l);
        next.push_back(std::move(u));
      }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

std::vector<Trace> traces_from(const KripkeStructure& k, StateId s, std::size_t max_len) {
  std::vector<Trace> out;
  std::vector<Trace> layer{Trace{s}};
  for (std::size_t len = 1; len <= max_len && !layer.empty(); ++len) {
    out.insert(out.end(), layer.begin(), layer.end());
    std::vector<Trace> next;
    for (const auto& t : layer)
      for (StateId n : k.successors(t.last())) {
        Trace u = t;
        u.steps.push_back(n);
        next.push_back(std::move(u));
      }
    layer = std::move(next);
  }
  return out;
}

std::vector<Trace> all_traces(const KripkeStructure& k, std::size_t max_len) {
  std::vector<Trace> out;
  for (StateId s = 0; s < k.num_states(); ++s) {
    auto t = traces_from(k, s, max_len);
    out.insert(out.end(), t.begin(), t.end());
  }
  std::stable_sort(out.begin(), out.end(), [](const Trace& a, const Trace& b) { return a.size() < b.size(); });
  return out;
}

KripkeStructure random_kripke(std::mt19937_64& rng, std::size_t states, const std::vector<std::string>& props) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < states; ++i) names.push_back("s" + std::to_string(i));
  std::bernoulli_distribution coin(0.4);
  std::uniform_int_distribution<std::size_t> pick(0, states - 1);
  std::vector<std::pair<StateId, StateId>> edges;
  for (StateId a = 0; a < states; ++a) {
    bool any = false;
    for (StateId b = 0; b < states; ++b)
      if (coin(rng)) {
        edges.emplace_back(a, b);
        any = true;
      }
    if (!any) edges.emplace_back(a, static_cast<StateId>(pick(rng)));
  }
  std::vector<PropSet> labels(states);
  std::bernoulli_distribution half(0.5);
  for (auto& l : labels)
    for (PropId p = 0; p < props.size(); ++p)
      if (half(rng)) l.insert(p);
  return KripkeStructure(props, names, edges, labels, 0);
}

std::vector<KripkeStructure> all_small_models() {
  const std::vector<std::string> props{"p", "q"};
  auto label = [](unsigned bits) {
    PropSet s;
    if (bits & 1u) s.insert(0);
    if (bits & 2u) s.insert(1);
    return s;
  };
  auto swapped = [](unsigned bits) { return ((bits & 1u) << 1) | ((bits & 2u) >> 1); };
  std::vector<KripkeStructure> out;
  for (unsigned loop = 0; loop < 2; ++loop)
    for (unsigned l0 = 0; l0 < 4; ++l0) {
      if (swapped(l0) < l0) continue;
      std::vector<std::pair<StateId, StateId>> edges;
      if (loop) edges.emplace_back(0, 0);
      out.emplace_back(props, std::vector<std::string>{"s0"}, edges, std::vector<PropSet>{label(l0)}, 0);
    }
  for (unsigned e = 0; e < 16; ++e)
    for (unsigned l0 = 0; l0 < 4; ++l0)
      for (unsigned l1 = 0; l1 < 4; ++l1) {
        // keep the smaller of (l0, l1) and its relabelling
        if (std::make_pair(swapped(l0), swapped(l1)) < std::make_pair(l0, l1)) continue;
        std::vector<std::pair<StateId, StateId>> edges;
        const std::pair<StateId, StateId> all[4] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
        for (unsigned i = 0; i < 4; ++i)
          if ((e >> i) & 1u) edges.push_back(all[i]);
        out.emplace_back(props, std::vector<std::string>{"s0", "s1"}, edges,
                         std::vector<PropSet>{label(l0), label(l1)}, 0);
      }
  return out;
}

std::vector<Modality> modalities_in(ModalityMask m) {
  std::vector<Modality> out;
  for (Modality x : {Modality::A, Modality::Abar, Modality::B, Modality::Bbar, Modality::E, Modality::Ebar})
    if (m & mask_of(x)) out.push_back(x);
  return out;
}

std::vector<HsFormula> all_pnf_formulas(const std::vector<RegExpr>& pool, ModalityMask modalities,
                                        std::size_t max_size) {
  const std::vector<Modality> mods = modalities_in(modalities);
  std::vector<std::vector<HsFormula>> by_size(max_size + 1);
  if (max_size >= 1) {
    for (const auto& r : pool) by_size[1].push_back(HsFormula::atom(r));
    for (const auto& r : pool) by_size[1].push_back(HsFormula::neg_atom(r));
  }
  for (std::size_t n = 2; n <= max_size; ++n) {
    for (const auto& a : by_size[n - 1])
      for (Modality m : mods) {
        by_size[n].push_back(HsFormula::diamond(m, a));
        by_size[n].push_back(HsFormula::box(m, a));
      }
    for (std::size_t l = 1; 2 * l <= n - 1; ++l) {
      const std::size_t r = n - 1 - l;
      for (std::size_t i = 0; i < by_size[l].size(); ++i)
        for (std::size_t j = (l == r ? i : 0); j < by_size[r].size(); ++j) {
          by_size[n].push_back(HsFormula::conjunction(by_size[l][i], by_size[r][j]));
          by_size[n].push_back(HsFormula::disjunction(by_size[l][i], by_size[r][j]));
        }
    }
  }
  std::vector<HsFormula> out;
  for (auto& v : by_size) out.insert(out.end(), v.begin(), v.end());
  return out;
}

HsFormula random_formula(std::mt19937_64& rng, const std::vector<RegExpr>& pool, ModalityMask modalities,
                         std::size_t size, bool allow_not) {
  const std::vector<Modality> mods = modalities_in(modalities);
  std::uniform_int_distribution<std::size_t> atom(0, pool.size() - 1);
  std::bernoulli_distribution coin(0.5);
  if (size <= 1 || (mods.empty() && size == 2)) {
    const RegExpr& r = pool[atom(rng)];
    return coin(rng) ? HsFormula::atom(r) : HsFormula::neg_atom(r);
  }
  std::uniform_int_distribution<int> kind(0, size >= 3 ? 2 : 1);
  int k = kind(rng);
  if (k == 0 && mods.empty()) k = 1;
  if (k == 1 && size < 3) k = 0;
  if (k == 0) {
    const Modality m = mods[std::uniform_int_distribution<std::size_t>(0, mods.size() - 1)(rng)];
    HsFormula body = random_formula(rng, pool, modalities, size - 1, allow_not);
    if (allow_not && coin(rng)) return HsFormula::negation(HsFormula::diamond(m, body));
    return coin(rng) ? HsFormula::diamond(m, body) : HsFormula::box(m, body);
  }
  if (k == 2 && allow_not) return HsFormula::negation(random_formula(rng, pool, modalities, size - 1, allow_not));
  const std::size_t l = std::uniform_int_distribution<std::size_t>(1, size - 2)(rng);
  HsFormula a = random_formula(rng, pool, modalities, l, allow_not);
  HsFormula b = random_formula(rng, pool, modalities, size - 1 - l, allow_not);
  return coin(rng) ? HsFormula::conjunction(a, b) : HsFormula::disjunction(a, b);
}

bool reference_bisimilar(const KripkeStructure& k, const SpecSet& spec, const Trace& a, const Trace& b, std::size_t h) {
  std::vector<Summary> sa, sb;
  for (std::size_t i = 1; i <= a.size(); ++i)
    sa.push_back(summary_of(k, spec, Trace(std::vector<StateId>(a.steps.begin(), a.steps.begin() + static_cast<std::ptrdiff_t>(i)))));
  for (std::size_t j = 1; j <= b.size(); ++j)
    sb.push_back(summary_of(k, spec, Trace(std::vector<StateId>(b.steps.begin(), b.steps.begin() + static_cast<std::ptrdiff_t>(j)))));
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, bool> memo;
  // lengths i, j of the prefixes compared at depth d
  std::function<bool(std::size_t, std::size_t, std::size_t)> bis = [&](std::size_t i, std::size_t j, std::size_t d) {
    const auto key = std::make_tuple(i, j, d);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    bool r = sa[i - 1] == sb[j - 1];
    if (r && d > 0) {
      for (std::size_t x = 1; r && x < i; ++x) {
        bool found = false;
        for (std::size_t y = 1; !found && y < j; ++y) found = bis(x, y, d - 1);
        r = found;
      }
      for (std::size_t y = 1; r && y < j; ++y) {
        bool found = false;
        for (std::size_t x = 1; !found && x < i; ++x) found = bis(x, y, d - 1);
        r = found;
      }
    }
    memo.emplace(key, r);
    return r;
  };
  return bis(a.size(), b.size(), h);
}

TilingInstance single_domino_instance(const std::vector<std::string>& extra) {
  TilingInstance inst;
  inst.n = 2;
  inst.dominoes = {"d"};
  inst.dominoes.insert(inst.dominoes.end(), extra.begin(), extra.end());
  inst.initial = {"d"};
  inst.horizontal = {{"d", "d"}};
  inst.vertical = {{"d", "d"}};
  inst.multi = {{"d", "d"}};
  inst.accepting = {"d"};
  return inst;
}

CodeWord uniform_multitiling(const TilingInstance& inst, const std::string& d) {
  CodeWord w;
  for (std::size_t row = 0; row < inst.side(); ++row)
    for (std::size_t col = 0; col < inst.side(); ++col) {
      const CodeWord c = encode_multicell(inst, {row, col, std::vector<std::string>(inst.n, d)});
      w.insert(w.end(), c.begin(), c.end());
    }
  return w;
}

CodeWord uniform_initialization(const TilingInstance& inst, const std::string& d) {
  CodeWord w;
  for (std::size_t col = 0; col < inst.side(); ++col) {
    const CodeWord c = encode_initial_cell(inst, {col, d});
    w.insert(w.end(), c.begin(), c.end());
  }
  return w;
}

CodeWord uniform_initialized(const TilingInstance& inst, const std::string& d) {
  CodeWord w{"bot"};
  const CodeWord mt = uniform_multitiling(inst, d);
  w.insert(w.end(), mt.begin(), mt.end());
  for (std::size_t l = inst.n; l >= 1; --l) {
    w.push_back("bot");
    const CodeWord init = uniform_initialization(inst, d);
    w.insert(w.end(), init.begin(), init.end());
  }
  w.push_back("end");
  return w;
}

}  // namespace hsmc::testing

namespace hsmc::testing {

namespace {

// v[n] for n in [1, horizon]; index 0 unused
using Truth = std::vector<char>;

Truth single_state_eval(const KripkeStructure& k, const HsFormula& f, std::size_t horizon, bool loop) {
  const std::size_t top = loop ? horizon : 1;
  Truth v(top + 1, 0);
  auto word = [&](std::size_t n) { return LabelWord(n, k.label(0)); };
  switch (f.kind()) {
    case HsFormula::Kind::Atom:
    case HsFormula::Kind::NegAtom:
      for (std::size_t n = 1; n <= top; ++n)
        v[n] = regex_match(f.regex(), k.props(), word(n)) == (f.kind() == HsFormula::Kind::Atom);
      return v;
    case HsFormula::Kind::Not: {
      const Truth a = single_state_eval(k, f.operand(), horizon, loop);
      for (std::size_t n = 1; n <= top; ++n) v[n] = !a[n];
      return v;
    }
    case HsFormula::Kind::And:
    case HsFormula::Kind::Or: {
      const Truth a = single_state_eval(k, f.lhs(), horizon, loop);
      const Truth b = single_state_eval(k, f.rhs(), horizon, loop);
      const bool conj = f.kind() == HsFormula::Kind::And;
      for (std::size_t n = 1; n <= top; ++n) v[n] = conj ? (a[n] && b[n]) : (a[n] || b[n]);
      return v;
    }
    case HsFormula::Kind::Diamond:
    case HsFormula::Kind::Box:
      break;
  }
  const Truth a = single_state_eval(k, f.operand(), horizon, loop);
  const bool ex = f.kind() == HsFormula::Kind::Diamond;
  // lengths of the related traces; the tail value a[top] covers every length past top
  auto quantify = [&](std::size_t lo, std::size_t hi, bool tail) {
    for (std::size_t m = lo; m <= hi; ++m)
      if (static_cast<bool>(a[m]) == ex) return ex;
    if (tail && static_cast<bool>(a[top]) == ex) return ex;
    return !ex;
  };
  for (std::size_t n = 1; n <= top; ++n) {
    switch (f.modality()) {
      case Modality::A:
      case Modality::Abar:
        v[n] = quantify(1, top, loop);
        break;
      case Modality::B:
      case Modality::E:
        v[n] = quantify(1, n - 1, false);
        break;
      default:
        v[n] = quantify(n + 1, top, loop);
        break;
    }
  }
  return v;
}

}  // namespace

bool single_state_holds(const KripkeStructure& k, const HsFormula& phi, std::size_t horizon) {
  if (k.num_states() != 1) throw PreconditionError("single_state_holds needs a one-state structure");
  const bool loop = k.has_edge(0, 0);
  const Truth v = single_state_eval(k, phi, horizon, loop);
  // every initial trace; with a loop the vector is constant past the horizon
  for (std::size_t n = 1; n < v.size(); ++n)
    if (!v[n]) return false;
  return true;
}

}  // namespace hsmc::testing
