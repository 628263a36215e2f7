#pragma once

// Alternating multi-tiling instances, the Kripke structure K_I of the
// hardness reduction, and validators for the word encodings used there.
//
// Proposition names: every domino type, then r_0 r_1 c_0 c_1 bot end.
// Row and column counters are read most significant bit first.
//
// Instance file format:
//   n: 2
//   dominoes: a b
//   initial: a
//   H: a b / b a
//   V: a a
//   M: a b
//   accepting: b

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hsmc/kripke.hpp"

namespace hsmc {

using DominoPair = std::pair<std::string, std::string>;

struct TilingInstance {
  std::size_t n = 2;
  std::vector<std::string> dominoes;
  std::vector<std::string> initial;
  std::vector<DominoPair> horizontal;
  std::vector<DominoPair> vertical;
  std::vector<DominoPair> multi;
  std::vector<std::string> accepting;

  /// Throws PreconditionError naming the violated invariant.
  void validate() const;
  bool has_domino(std::string_view d) const;
  bool is_initial(std::string_view d) const;
  bool is_accepting(std::string_view d) const;
  bool in_h(std::string_view a, std::string_view b) const;
  bool in_v(std::string_view a, std::string_view b) const;
  bool in_m(std::string_view a, std::string_view b) const;
  /// 2^n
  std::size_t side() const;
};

TilingInstance parse_tiling_instance(std::string_view text);
std::string serialize_tiling_instance(const TilingInstance& inst);

std::vector<std::string> tiling_props(const TilingInstance& inst);
KripkeStructure gen_kripke(const TilingInstance& inst);

/// Words over the proposition names, e.g. {"a", "b", "r_0", ...}.
using CodeWord = std::vector<std::string>;

struct MultiCellCode {
  std::size_t row = 0;
  std::size_t col = 0;
  std::vector<std::string> content;
};

struct InitialCellCode {
  std::size_t col = 0;
  std::string content;
};

/// Outcome of a validator: either valid or the name of the first violated
/// requirement, plus a human-readable detail.
struct CodeCheck {
  bool valid = true;
  std::string reason;
  std::string detail;

  static CodeCheck ok() { return {}; }
  static CodeCheck fail(std::string reason, std::string detail = {}) {
    return {false, std::move(reason), std::move(detail)};
  }
};

struct MultiCellCheck {
  CodeCheck check;
  MultiCellCode cell;
};

/// Reasons: "length", "shape", "multi-cell M-coherence".
MultiCellCheck validate_multicell(const TilingInstance& inst, const CodeWord& w);
/// Reasons: "segmentation", "completeness requirement", "uniqueness requirement",
/// "row-adjacency requirement", "column-adjacency requirement", "acceptance requirement".
CodeCheck validate_multitiling_code(const TilingInstance& inst, const CodeWord& w);
/// Reasons: "segmentation", "initial domino", "column completeness", "content uniqueness".
CodeCheck validate_initialization_code(const TilingInstance& inst, const CodeWord& w);
/// Reasons: "shape", any reason of the two validators above, and
/// "initialization coherence requirement".
CodeCheck validate_initialized_code(const TilingInstance& inst, const CodeWord& w);

/// Encoders used to build witnesses.
CodeWord encode_multicell(const TilingInstance& inst, const MultiCellCode& c);
CodeWord encode_initial_cell(const TilingInstance& inst, const InitialCellCode& c);

}  // namespace hsmc
