#pragma once

// Prefix bisimilarity, prefix samplings and trace contraction.
//
// Positions are 1-based throughout, matching the usual rho(i, j) notation.

#include <cstddef>
#include <vector>

#include "hsmc/kripke.hpp"
#include "hsmc/summary.hpp"

namespace hsmc {

/// Strictly increasing 1-based positions.
using PositionSet = std::vector<std::size_t>;

/// Prefix summaries S(rho(1, k)) at the positions of PS_h, in order.
struct SamplingWord {
  std::vector<Summary> summaries;
  friend bool operator==(const SamplingWord&, const SamplingWord&) = default;
};

/// `prefix_ids[k - 1]` is the id of S(rho(1, k)). Throws PreconditionError
/// unless 1 <= i <= j <= |prefix_ids|.
PositionSet prefix_skeleton_sampling(const std::vector<SummaryId>& prefix_ids, std::size_t i, std::size_t j);
PositionSet h_prefix_sampling(const std::vector<SummaryId>& prefix_ids, std::size_t h);

PositionSet prefix_skeleton_sampling(SummaryTable& table, const Trace& rho, std::size_t i, std::size_t j);
PositionSet h_prefix_sampling(SummaryTable& table, const Trace& rho, std::size_t h);
SamplingWord sampling_word(SummaryTable& table, const Trace& rho, std::size_t h);
/// Same as sampling_word but as interned ids (comparable within `table`).
std::vector<SummaryId> sampling_ids(SummaryTable& table, const Trace& rho, std::size_t h);

/// Direct decision of the inductive definition, by dynamic programming over
/// pairs of prefix lengths, one level per unit of h.
bool is_h_prefix_bisimilar(SummaryTable& table, const Trace& rho, const Trace& rho2, std::size_t h);

struct Contraction {
  Trace trace;
  /// Number of basic contraction steps applied.
  std::size_t steps = 0;
};

/// Repeatedly removes rho(l+1, l') for the leftmost pair l < l' of positions
/// strictly between two consecutive PS_h positions with equal prefix
/// summaries, until no such pair remains.
Contraction contract_trace(SummaryTable& table, const Trace& rho, std::size_t h);
Trace contract(SummaryTable& table, const Trace& rho, std::size_t h);

/// (|S| * 2^((2|spec|)^2))^(h+2)
BigInt certificate_bound(const KripkeStructure& k, const SpecSet& spec, std::size_t h);
/// (|S| * 2^((2|spec|)^2))^(h+1)
BigInt sampling_size_bound(const KripkeStructure& k, const SpecSet& spec, std::size_t h);

// Convenience overloads building a throwaway table.
PositionSet prefix_skeleton_sampling(const KripkeStructure& k, const SpecSet& spec, const Trace& rho, std::size_t i,
                                     std::size_t j);
PositionSet h_prefix_sampling(const KripkeStructure& k, const SpecSet& spec, const Trace& rho, std::size_t h);
SamplingWord sampling_word(const KripkeStructure& k, const SpecSet& spec, const Trace& rho, std::size_t h);
bool is_h_prefix_bisimilar(const KripkeStructure& k, const SpecSet& spec, const Trace& rho, const Trace& rho2,
                           std::size_t h);
Trace contract(const KripkeStructure& k, const SpecSet& spec, const Trace& rho, std::size_t h);

}  // namespace hsmc
