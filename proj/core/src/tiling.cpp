#include "hsmc/tiling.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "hsmc/error.hpp"

namespace hsmc {

namespace {

const std::vector<std::string> kCounterProps{"r_0", "r_1", "c_0", "c_1", "bot", "end"};

bool contains(const std::vector<std::string>& v, std::string_view x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

bool contains(const std::vector<DominoPair>& v, std::string_view a, std::string_view b) {
  return std::any_of(v.begin(), v.end(), [&](const DominoPair& p) { return p.first == a && p.second == b; });
}

std::vector<std::string> words(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::string join(const std::vector<std::string>& v, const char* sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

}  // namespace

void TilingInstance::validate() const {
  if (n == 0 || n % 2 != 0) throw PreconditionError("n must be a positive even number, got " + std::to_string(n));
  if (n >= 32) throw PreconditionError("n is too large for explicit encodings");
  if (dominoes.empty()) throw PreconditionError("the set of domino types is empty");
  std::set<std::string> seen;
  for (const auto& d : dominoes) {
    if (!is_identifier(d)) throw PreconditionError("invalid domino name '" + d + "'");
    if (contains(kCounterProps, d)) throw PreconditionError("domino name '" + d + "' clashes with a reserved proposition");
    if (!seen.insert(d).second) throw PreconditionError("duplicate domino '" + d + "'");
  }
  for (const auto* set : {&initial, &accepting})
    for (const auto& d : *set)
      if (!has_domino(d)) throw PreconditionError("unknown domino '" + d + "'");
  for (const auto* rel : {&horizontal, &vertical, &multi})
    for (const auto& [a, b] : *rel)
      if (!has_domino(a) || !has_domino(b)) throw PreconditionError("relation mentions unknown domino");
}

bool TilingInstance::has_domino(std::string_view d) const { return contains(dominoes, d); }
bool TilingInstance::is_initial(std::string_view d) const { return contains(initial, d); }
bool TilingInstance::is_accepting(std::string_view d) const { return contains(accepting, d); }
bool TilingInstance::in_h(std::string_view a, std::string_view b) const { return contains(horizontal, a, b); }
bool TilingInstance::in_v(std::string_view a, std::string_view b) const { return contains(vertical, a, b); }
bool TilingInstance::in_m(std::string_view a, std::string_view b) const { return contains(multi, a, b); }
std::size_t TilingInstance::side() const { return std::size_t{1} << n; }

TilingInstance parse_tiling_instance(std::string_view text) {
  TilingInstance inst;
  bool have_n = false;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& msg) -> void {
    throw ParseError("line " + std::to_string(lineno) + ": " + msg, lineno);
  };
  auto pairs = [&](std::string_view body) {
    std::vector<DominoPair> out;
    std::size_t start = 0;
    while (start <= body.size()) {
      const std::size_t slash = body.find('/', start);
      const auto part = words(body.substr(start, slash == std::string_view::npos ? std::string_view::npos : slash - start));
      if (!part.empty()) {
        if (part.size() != 2) fail("expected a pair of dominoes, got '" + join(part) + "'");
        out.emplace_back(part[0], part[1]);
      }
      if (slash == std::string_view::npos) break;
      start = slash + 1;
    }
    return out;
  };
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (words(line).empty()) continue;
    const auto colon = line.find(':');
    if (colon == std::string_view::npos) fail("expected 'key: value'");
    const auto keyw = words(line.substr(0, colon));
    if (keyw.size() != 1) fail("malformed key");
    const std::string& key = keyw[0];
    const std::string_view body = line.substr(colon + 1);
    if (key == "n") {
      const auto v = words(body);
      if (v.size() != 1 || !std::all_of(v[0].begin(), v[0].end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        fail("n expects a natural number");
      inst.n = std::stoul(v[0]);
      have_n = true;
    } else if (key == "dominoes") {
      inst.dominoes = words(body);
    } else if (key == "initial") {
      inst.initial = words(body);
    } else if (key == "accepting") {
      inst.accepting = words(body);
    } else if (key == "H") {
      inst.horizontal = pairs(body);
    } else if (key == "V") {
      inst.vertical = pairs(body);
    } else if (key == "M") {
      inst.multi = pairs(body);
    } else {
      fail("unknown key '" + key + "'");
    }
  }
  if (!have_n) throw ParseError("missing 'n:' line");
  inst.validate();
  return inst;
}

std::string serialize_tiling_instance(const TilingInstance& inst) {
  auto rel = [](const std::vector<DominoPair>& r) {
    std::string out;
    for (std::size_t i = 0; i < r.size(); ++i) out += (i ? " / " : "") + r[i].first + " " + r[i].second;
    return out;
  };
  std::ostringstream out;
  out << "n: " << inst.n << "\n";
  out << "dominoes: " << join(inst.dominoes) << "\n";
  out << "initial: " << join(inst.initial) << "\n";
  out << "H: " << rel(inst.horizontal) << "\n";
  out << "V: " << rel(inst.vertical) << "\n";
  out << "M: " << rel(inst.multi) << "\n";
  out << "accepting: " << join(inst.accepting) << "\n";
  return out.str();
}

std::vector<std::string> tiling_props(const TilingInstance& inst) {
  std::vector<std::string> out = inst.dominoes;
  out.insert(out.end(), kCounterProps.begin(), kCounterProps.end());
  return out;
}

KripkeStructure gen_kripke(const TilingInstance& inst) {
  inst.validate();
  const std::vector<std::string> props = tiling_props(inst);
  const auto count = static_cast<StateId>(props.size());
  const StateId end = count - 1;
  std::vector<std::pair<StateId, StateId>> edges;
  for (StateId s = 0; s < count; ++s) {
    if (s == end) continue;
    for (StateId t = 0; t < count; ++t) edges.emplace_back(s, t);
  }
  std::vector<PropSet> labels;
  for (StateId s = 0; s < count; ++s) labels.push_back(PropSet::of({s}));
  return KripkeStructure(props, props, std::move(edges), std::move(labels), end);
}

// ---------------------------------------------------------------------------
// Encodings

namespace {

// Reads n counter letters prefix_0 / prefix_1 starting at w[from], MSB first.
bool read_counter(const CodeWord& w, std::size_t from, std::size_t n, char prefix, std::size_t& value) {
  value = 0;
  const std::string zero = std::string(1, prefix) + "_0";
  const std::string one = std::string(1, prefix) + "_1";
  for (std::size_t i = 0; i < n; ++i) {
    const std::string& l = w[from + i];
    if (l != zero && l != one) return false;
    value = (value << 1) | (l == one ? 1u : 0u);
  }
  return true;
}

void write_counter(CodeWord& w, std::size_t value, std::size_t n, char prefix) {
  for (std::size_t i = 0; i < n; ++i) {
    const bool bit = ((value >> (n - 1 - i)) & 1u) != 0;
    w.push_back(std::string(1, prefix) + (bit ? "_1" : "_0"));
  }
}

std::string cell_name(std::size_t row, std::size_t col) {
  return "(" + std::to_string(row) + ", " + std::to_string(col) + ")";
}

CodeCheck check_adjacency(const TilingInstance& inst, const std::map<std::pair<std::size_t, std::size_t>, std::vector<std::string>>& cells,
                          bool horizontal) {
  for (const auto& [pos, content] : cells) {
    const auto next = horizontal ? std::make_pair(pos.first, pos.second + 1) : std::make_pair(pos.first + 1, pos.second);
    auto it = cells.find(next);
    if (it == cells.end()) continue;
    for (std::size_t l = 0; l < inst.n; ++l) {
      const bool ok = horizontal ? inst.in_h(content[l], it->second[l]) : inst.in_v(content[l], it->second[l]);
      if (!ok)
        return CodeCheck::fail(horizontal ? "row-adjacency requirement" : "column-adjacency requirement",
                               "cells " + cell_name(pos.first, pos.second) + " and " + cell_name(next.first, next.second) +
                                   ", component " + std::to_string(l + 1));
    }
  }
  return CodeCheck::ok();
}

struct ParsedMultiTiling {
  CodeCheck check;
  std::vector<MultiCellCode> codes;
};

ParsedMultiTiling parse_multitiling(const TilingInstance& inst, const CodeWord& w) {
  ParsedMultiTiling out;
  const std::size_t len = 3 * inst.n;
  if (w.empty() || w.size() % len != 0) {
    out.check = CodeCheck::fail("segmentation", "length " + std::to_string(w.size()) + " is not a positive multiple of " +
                                                    std::to_string(len));
    return out;
  }
  for (std::size_t at = 0; at < w.size(); at += len) {
    const CodeWord chunk(w.begin() + static_cast<std::ptrdiff_t>(at), w.begin() + static_cast<std::ptrdiff_t>(at + len));
    MultiCellCheck c = validate_multicell(inst, chunk);
    if (!c.check.valid) {
      out.check = CodeCheck::fail("segmentation", "multi-cell code " + std::to_string(at / len + 1) + ": " + c.check.reason);
      return out;
    }
    out.codes.push_back(std::move(c.cell));
  }
  return out;
}

struct ParsedInitialization {
  CodeCheck check;
  std::vector<InitialCellCode> codes;
};

ParsedInitialization parse_initialization(const TilingInstance& inst, const CodeWord& w) {
  ParsedInitialization out;
  const std::size_t len = inst.n + 1;
  if (w.empty() || w.size() % len != 0) {
    out.check = CodeCheck::fail("segmentation", "length " + std::to_string(w.size()) + " is not a positive multiple of " +
                                                    std::to_string(len));
    return out;
  }
  for (std::size_t at = 0; at < w.size(); at += len) {
    InitialCellCode c;
    c.content = w[at];
    if (!inst.has_domino(c.content) || !read_counter(w, at + 1, inst.n, 'c', c.col)) {
      out.check = CodeCheck::fail("segmentation", "malformed initial cell code " + std::to_string(at / len + 1));
      return out;
    }
    out.codes.push_back(std::move(c));
  }
  for (const auto& c : out.codes)
    if (!inst.is_initial(c.content)) {
      out.check = CodeCheck::fail("initial domino", "'" + c.content + "' is not an initial domino");
      return out;
    }
  std::map<std::size_t, std::string> by_col;
  for (const auto& c : out.codes) by_col.emplace(c.col, c.content);
  if (by_col.size() != inst.side()) {
    for (std::size_t col = 0; col < inst.side(); ++col)
      if (!by_col.count(col)) {
        out.check = CodeCheck::fail("column completeness", "no initial cell for column " + std::to_string(col));
        return out;
      }
  }
  for (const auto& c : out.codes)
    if (by_col[c.col] != c.content) {
      out.check = CodeCheck::fail("content uniqueness", "column " + std::to_string(c.col) + " has two contents");
      return out;
    }
  return out;
}

}  // namespace

MultiCellCheck validate_multicell(const TilingInstance& inst, const CodeWord& w) {
  MultiCellCheck out;
  const std::size_t n = inst.n;
  if (w.size() != 3 * n) {
    out.check = CodeCheck::fail("length", "expected " + std::to_string(3 * n) + " letters, got " + std::to_string(w.size()));
    return out;
  }
  for (std::size_t i = 0; i < n; ++i)
    if (!inst.has_domino(w[i])) {
      out.check = CodeCheck::fail("shape", "letter " + std::to_string(i + 1) + " is not a domino");
      return out;
    }
  if (!read_counter(w, n, n, 'r', out.cell.row)) {
    out.check = CodeCheck::fail("shape", "malformed row counter");
    return out;
  }
  if (!read_counter(w, 2 * n, n, 'c', out.cell.col)) {
    out.check = CodeCheck::fail("shape", "malformed column counter");
    return out;
  }
  out.cell.content.assign(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(n));
  for (std::size_t l = 0; l + 1 < n; ++l)
    if (!inst.in_m(w[l], w[l + 1])) {
      out.check = CodeCheck::fail("multi-cell M-coherence",
                                  "(" + w[l] + ", " + w[l + 1] + ") is not in M at component " + std::to_string(l + 1));
      return out;
    }
  return out;
}

CodeCheck validate_multitiling_code(const TilingInstance& inst, const CodeWord& w) {
  ParsedMultiTiling parsed = parse_multitiling(inst, w);
  if (!parsed.check.valid) return parsed.check;

  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::string>> cells;
  for (const auto& c : parsed.codes) cells.emplace(std::make_pair(c.row, c.col), c.content);
  for (std::size_t i = 0; i < inst.side(); ++i)
    for (std::size_t j = 0; j < inst.side(); ++j)
      if (!cells.count({i, j})) return CodeCheck::fail("completeness requirement", "missing cell " + cell_name(i, j));
  for (const auto& c : parsed.codes)
    if (cells.at({c.row, c.col}) != c.content)
      return CodeCheck::fail("uniqueness requirement", "cell " + cell_name(c.row, c.col) + " has two contents");
  if (CodeCheck r = check_adjacency(inst, cells, true); !r.valid) return r;
  if (CodeCheck r = check_adjacency(inst, cells, false); !r.valid) return r;
  const bool accepted = std::any_of(parsed.codes.begin(), parsed.codes.end(), [&](const MultiCellCode& c) {
    return c.row == inst.side() - 1 && inst.is_accepting(c.content.back());
  });
  if (!accepted) return CodeCheck::fail("acceptance requirement", "no accepting cell in the last row");
  return CodeCheck::ok();
}

CodeCheck validate_initialization_code(const TilingInstance& inst, const CodeWord& w) {
  return parse_initialization(inst, w).check;
}

CodeCheck validate_initialized_code(const TilingInstance& inst, const CodeWord& w) {
  if (w.size() < 2 || w.front() != "bot" || w.back() != "end")
    return CodeCheck::fail("shape", "expected bot ... end");
  // segments between bot markers: w, w_n, ..., w_1
  std::vector<CodeWord> segs;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    if (w[i] == "bot") segs.emplace_back();
    else segs.back().push_back(w[i]);
  }
  if (segs.size() != inst.n + 1)
    return CodeCheck::fail("shape", "expected " + std::to_string(inst.n + 1) + " bot-delimited blocks, got " +
                                        std::to_string(segs.size()));
  ParsedMultiTiling mt = parse_multitiling(inst, segs[0]);
  if (!mt.check.valid) return mt.check;
  if (CodeCheck r = validate_multitiling_code(inst, segs[0]); !r.valid) return r;
  // init[l - 1] is the initialization code of component l
  std::vector<std::map<std::size_t, std::string>> init(inst.n);
  for (std::size_t l = 1; l <= inst.n; ++l) {
    ParsedInitialization pi = parse_initialization(inst, segs[inst.n + 1 - l]);
    if (!pi.check.valid) {
      CodeCheck r = pi.check;
      r.detail = "component " + std::to_string(l) + (r.detail.empty() ? "" : ": " + r.detail);
      return r;
    }
    for (const auto& c : pi.codes) init[l - 1].emplace(c.col, c.content);
  }
  for (const auto& c : mt.codes) {
    if (c.row != 0) continue;
    for (std::size_t l = 0; l < inst.n; ++l)
      if (init[l].at(c.col) != c.content[l])
        return CodeCheck::fail("initialization coherence requirement",
                               "column " + std::to_string(c.col) + ", component " + std::to_string(l + 1));
  }
  return CodeCheck::ok();
}

CodeWord encode_multicell(const TilingInstance& inst, const MultiCellCode& c) {
  CodeWord w = c.content;
  write_counter(w, c.row, inst.n, 'r');
  write_counter(w, c.col, inst.n, 'c');
  return w;
}

CodeWord encode_initial_cell(const TilingInstance& inst, const InitialCellCode& c) {
  CodeWord w{c.content};
  write_counter(w, c.col, inst.n, 'c');
  return w;
}

}  // namespace hsmc
