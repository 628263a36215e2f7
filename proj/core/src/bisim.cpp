#include "hsmc/bisim.hpp"

#include <unordered_map>
#include <unordered_set>

#include "hsmc/error.hpp"

namespace hsmc {

PositionSet prefix_skeleton_sampling(const std::vector<SummaryId>& prefix_ids, std::size_t i, std::size_t j) {
  if (i < 1 || i > j || j > prefix_ids.size())
    throw PreconditionError("sampling interval [" + std::to_string(i) + ", " + std::to_string(j) +
                            "] out of range for a trace of length " + std::to_string(prefix_ids.size()));
  if (i == j) return {i};
  PositionSet out{i};
  std::unordered_set<SummaryId> seen;
  for (std::size_t k = i + 1; k < j; ++k)
    if (seen.insert(prefix_ids[k - 1]).second) out.push_back(k);
  out.push_back(j);
  return out;
}

PositionSet h_prefix_sampling(const std::vector<SummaryId>& prefix_ids, std::size_t h) {
  const std::size_t n = prefix_ids.size();
  if (n == 0) throw PreconditionError("empty trace");
  PositionSet ps = n == 1 ? PositionSet{1} : PositionSet{1, n};
  for (std::size_t level = 0; level < h; ++level) {
    PositionSet next{ps.front()};
    for (std::size_t a = 0; a + 1 < ps.size(); ++a) {
      PositionSet part = prefix_skeleton_sampling(prefix_ids, ps[a], ps[a + 1]);
      next.insert(next.end(), part.begin() + 1, part.end());
    }
    if (next.size() == ps.size()) break;  // fixed point; deeper levels add nothing
    ps = std::move(next);
  }
  return ps;
}

PositionSet prefix_skeleton_sampling(SummaryTable& table, const Trace& rho, std::size_t i, std::size_t j) {
  return prefix_skeleton_sampling(table.prefixes(rho), i, j);
}

PositionSet h_prefix_sampling(SummaryTable& table, const Trace& rho, std::size_t h) {
  return h_prefix_sampling(table.prefixes(rho), h);
}

std::vector<SummaryId> sampling_ids(SummaryTable& table, const Trace& rho, std::size_t h) {
  const auto p = table.prefixes(rho);
  std::vector<SummaryId> out;
  for (std::size_t pos : h_prefix_sampling(p, h)) out.push_back(p[pos - 1]);
  return out;
}

SamplingWord sampling_word(SummaryTable& table, const Trace& rho, std::size_t h) {
  SamplingWord w;
  for (SummaryId id : sampling_ids(table, rho, h)) w.summaries.push_back(table.get(id));
  return w;
}

bool is_h_prefix_bisimilar(SummaryTable& table, const Trace& rho, const Trace& rho2, std::size_t h) {
  const auto p = table.prefixes(rho);
  const auto q = table.prefixes(rho2);
  const std::size_t n = p.size();
  const std::size_t m = q.size();
  if (p.back() != q.back()) return false;

  // cur[(i-1)*m + (j-1)]: rho(1,i) and rho2(1,j) are bisimilar at the current level
  std::vector<std::uint8_t> eq(n * m), cur(n * m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) eq[i * m + j] = p[i] == q[j];
  cur = eq;

  // row_or[i][j]: some j' < j with cur[i][j'];  col_or[i][j]: some i' < i with cur[i'][j]
  std::vector<std::uint8_t> row_or(n * m), col_or(n * m), fwd(n * m), bwd(n * m);
  for (std::size_t level = 1; level <= h; ++level) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        row_or[i * m + j] = j > 0 && (row_or[i * m + j - 1] || cur[i * m + j - 1]);
        col_or[i * m + j] = i > 0 && (col_or[(i - 1) * m + j] || cur[(i - 1) * m + j]);
      }
    // fwd[i][j]: every proper prefix of rho(1,i) matches a proper prefix of rho2(1,j); bwd symmetric
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        fwd[i * m + j] = i == 0 || (fwd[(i - 1) * m + j] && row_or[(i - 1) * m + j]);
        bwd[i * m + j] = j == 0 || (bwd[i * m + j - 1] && col_or[i * m + j - 1]);
      }
    std::vector<std::uint8_t> next(n * m);
    for (std::size_t x = 0; x < n * m; ++x) next[x] = eq[x] && fwd[x] && bwd[x];
    if (next == cur) break;
    cur = std::move(next);
  }
  return cur[n * m - 1] != 0;
}

Contraction contract_trace(SummaryTable& table, const Trace& rho, std::size_t h) {
  Contraction out{rho, 0};
  std::vector<StateId>& steps = out.trace.steps;
  std::vector<SummaryId> p = table.prefixes(rho);
  std::unordered_map<SummaryId, std::size_t> last_at;
  for (;;) {
    const PositionSet ps = h_prefix_sampling(p, h);
    std::size_t ell = 0, ell2 = 0;
    for (std::size_t a = 0; a + 1 < ps.size() && ell == 0; ++a) {
      last_at.clear();
      for (std::size_t k = ps[a] + 1; k < ps[a + 1]; ++k) last_at[p[k - 1]] = k;
      for (std::size_t k = ps[a] + 1; k < ps[a + 1]; ++k) {
        if (last_at[p[k - 1]] > k) {
          ell = k;
          for (std::size_t k2 = k + 1;; ++k2)
            if (p[k2 - 1] == p[k - 1]) {
              ell2 = k2;
              break;
            }
          break;
        }
      }
    }
    if (ell == 0) break;
    // rho(1, ell) . rho(ell2 + 1, n); prefix summaries after ell2 are unchanged
    steps.erase(steps.begin() + static_cast<std::ptrdiff_t>(ell), steps.begin() + static_cast<std::ptrdiff_t>(ell2));
    p.erase(p.begin() + static_cast<std::ptrdiff_t>(ell), p.begin() + static_cast<std::ptrdiff_t>(ell2));
    ++out.steps;
  }
  return out;
}

Trace contract(SummaryTable& table, const Trace& rho, std::size_t h) { return contract_trace(table, rho, h).trace; }

namespace {

BigInt base_count(const KripkeStructure& k, const SpecSet& spec) {
  const auto e = static_cast<unsigned>(4 * spec.size() * spec.size());
  return BigInt(k.num_states()) * (BigInt(1) << e);
}

}  // namespace

BigInt certificate_bound(const KripkeStructure& k, const SpecSet& spec, std::size_t h) {
  return boost::multiprecision::pow(base_count(k, spec), static_cast<unsigned>(h + 2));
}

BigInt sampling_size_bound(const KripkeStructure& k, const SpecSet& spec, std::size_t h) {
  return boost::multiprecision::pow(base_count(k, spec), static_cast<unsigned>(h + 1));
}

PositionSet prefix_skeleton_sampling(const KripkeStructure& k, const SpecSet& spec, const Trace& rho, std::size_t i,
                                     std::size_t j) {
  k.require_trace(rho);
  SummaryTable t(k, spec);
  return prefix_skeleton_sampling(t, rho, i, j);
}

PositionSet h_prefix_sampling(const KripkeStructure& k, const SpecSet& spec, const Trace& rho, std::size_t h) {
  k.require_trace(rho);
  SummaryTable t(k, spec);
  return h_prefix_sampling(t, rho, h);
}

SamplingWord sampling_word(const KripkeStructure& k, const SpecSet& spec, const Trace& rho, std::size_t h) {
  k.require_trace(rho);
  SummaryTable t(k, spec);
  return sampling_word(t, rho, h);
}

bool is_h_prefix_bisimilar(const KripkeStructure& k, const SpecSet& spec, const Trace& rho, const Trace& rho2,
                           std::size_t h) {
  k.require_trace(rho);
  k.require_trace(rho2);
  SummaryTable t(k, spec);
  return is_h_prefix_bisimilar(t, rho, rho2, h);
}

Trace contract(const KripkeStructure& k, const SpecSet& spec, const Trace& rho, std::size_t h) {
  k.require_trace(rho);
  SummaryTable t(k, spec);
  return contract(t, rho, h);
}

}  // namespace hsmc
