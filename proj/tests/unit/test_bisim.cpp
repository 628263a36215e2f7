#include <gtest/gtest.h>

#include <random>
#include <set>

#include "hsmc/bisim.hpp"
#include "hsmc/error.hpp"
#include "support.hpp"

using namespace hsmc;
using hsmc::testing::k0;

namespace {

Trace repeat(StateId s, std::size_t n) { return Trace(std::vector<StateId>(n, s)); }

// Sampling positions computed by hand from the prefix summaries.
PositionSet skeleton_by_definition(const KripkeStructure& k, const SpecSet& spec, const Trace& rho, std::size_t i,
                                   std::size_t j) {
  std::vector<Summary> pre;
  for (std::size_t n = 1; n <= rho.size(); ++n)
    pre.push_back(summary_of(k, spec, Trace(std::vector<StateId>(rho.steps.begin(), rho.steps.begin() + static_cast<std::ptrdiff_t>(n)))));
  std::set<std::size_t> pos{i, j};
  for (std::size_t x = i + 1; x < j; ++x)
    for (std::size_t y = i + 1; y < j; ++y)
      if (pre[y - 1] == pre[x - 1]) {
        pos.insert(y);
        break;
      }
  return PositionSet(pos.begin(), pos.end());
}

}  // namespace

TEST(Bisim, SkeletonSampling) {
  const KripkeStructure k = k0();
  const SpecSet spec({parse_regex("p")}, k.props());
  SummaryTable table(k, spec);
  const Trace rho{1, 1, 1, 1, 0};
  EXPECT_EQ(prefix_skeleton_sampling(table, rho, 3, 3), (PositionSet{3}));
  EXPECT_EQ(prefix_skeleton_sampling(table, rho, 2, 3), (PositionSet{2, 3}));
  EXPECT_EQ(prefix_skeleton_sampling(table, rho, 1, 5), skeleton_by_definition(k, spec, rho, 1, 5));
  EXPECT_THROW(prefix_skeleton_sampling(table, rho, 4, 2), PreconditionError);
  EXPECT_THROW(prefix_skeleton_sampling(table, rho, 1, 6), PreconditionError);
}

TEST(Bisim, SkeletonSamplingMatchesDefinitionExhaustively) {
  const KripkeStructure k = k0();
  const SpecSet spec({parse_regex("p . q*")}, k.props());
  SummaryTable table(k, spec);
  for (const Trace& t : hsmc::testing::all_traces(k, 6))
    for (std::size_t i = 1; i <= t.size(); ++i)
      for (std::size_t j = i; j <= t.size(); ++j)
        ASSERT_EQ(prefix_skeleton_sampling(table, t, i, j), skeleton_by_definition(k, spec, t, i, j));
}

TEST(Bisim, HPrefixSampling) {
  const KripkeStructure k = k0();
  const SpecSet spec({parse_regex("p")}, k.props());
  SummaryTable table(k, spec);
  const Trace rho{1, 1, 1, 1, 0};
  EXPECT_EQ(h_prefix_sampling(table, rho, 0), (PositionSet{1, 5}));
  EXPECT_EQ(h_prefix_sampling(table, rho, 1), prefix_skeleton_sampling(table, rho, 1, 5));
  for (std::size_t h = 0; h < 4; ++h) EXPECT_EQ(h_prefix_sampling(table, Trace{1}, h), (PositionSet{1}));
}

TEST(Bisim, SamplingsAreMonotoneAndBounded) {
  std::mt19937_64 rng(3);
  for (int m = 0; m < 4; ++m) {
    const KripkeStructure k = m == 0 ? k0() : hsmc::testing::random_kripke(rng, 3);
    const SpecSet spec({parse_regex("p . q*")}, k.props());
    SummaryTable table(k, spec);
    for (const Trace& t : hsmc::testing::all_traces(k, 6)) {
      PositionSet prev;
      for (std::size_t h = 0; h <= 3; ++h) {
        const PositionSet ps = h_prefix_sampling(table, t, h);
        ASSERT_TRUE(std::is_sorted(ps.begin(), ps.end()));
        EXPECT_EQ(ps.front(), 1u);
        EXPECT_EQ(ps.back(), t.size());
        EXPECT_TRUE(std::includes(ps.begin(), ps.end(), prev.begin(), prev.end()));
        EXPECT_LE(BigInt(ps.size()), sampling_size_bound(k, spec, h));
        prev = ps;
      }
    }
  }
}

TEST(Bisim, SamplingWord) {
  const KripkeStructure k = k0();
  const SpecSet spec({parse_regex("p")}, k.props());
  const Trace rho{0, 1, 1};
  const SamplingWord w0 = sampling_word(k, spec, rho, 0);
  ASSERT_EQ(w0.summaries.size(), 2u);
  EXPECT_EQ(w0.summaries[0], summary_of(k, spec, Trace{0}));
  EXPECT_EQ(w0.summaries[1], summary_of(k, spec, rho));
  EXPECT_EQ(sampling_word(k, spec, Trace{1}, 2).summaries.size(), 1u);
  EXPECT_EQ(sampling_word(k, spec, rho, 1), sampling_word(k, spec, rho, 1));
}

TEST(Bisim, DecisionProcedureMatchesDefinition) {
  std::mt19937_64 rng(5);
  for (int m = 0; m < 3; ++m) {
    const KripkeStructure k = m == 0 ? k0() : hsmc::testing::random_kripke(rng, 3);
    const SpecSet spec({parse_regex("p . q*")}, k.props());
    SummaryTable table(k, spec);
    const auto traces = hsmc::testing::all_traces(k, 4);
    for (std::size_t h = 0; h <= 2; ++h)
      for (const Trace& a : traces)
        for (const Trace& b : traces)
          ASSERT_EQ(is_h_prefix_bisimilar(table, a, b, h), hsmc::testing::reference_bisimilar(k, spec, a, b, h));
  }
}

TEST(Bisim, Examples) {
  const KripkeStructure k = k0();
  const SpecSet spec({parse_regex("p")}, k.props());
  EXPECT_TRUE(is_h_prefix_bisimilar(k, spec, Trace{0, 1, 0}, Trace{0, 1, 0}, 3));
  // equal summaries, different prefixes
  const Trace a{1, 1, 1}, b{1, 1};
  EXPECT_EQ(summary_of(k, spec, a), summary_of(k, spec, b));
  EXPECT_TRUE(is_h_prefix_bisimilar(k, spec, a, b, 0));
  const Trace rho{1, 1, 1};
  EXPECT_TRUE(is_h_prefix_bisimilar(k, spec, rho, contract(k, spec, rho, 1), 1));
}

TEST(Bisim, ContractAllS1Loop) {
  const KripkeStructure k = k0();
  const SpecSet spec({parse_regex("p")}, k.props());
  const Trace rho = repeat(1, 10);
  const Trace c = contract(k, spec, rho, 0);
  EXPECT_LT(c.size(), rho.size());
  EXPECT_EQ(c.first(), rho.first());
  EXPECT_EQ(c.last(), rho.last());
  EXPECT_TRUE(is_h_prefix_bisimilar(k, spec, rho, c, 0));
  EXPECT_TRUE(hsmc::testing::reference_bisimilar(k, spec, rho, c, 0));
}

TEST(Bisim, ContractTrivialCases) {
  const KripkeStructure k = k0();
  const SpecSet spec({parse_regex("p . q*")}, k.props());
  EXPECT_EQ(contract(k, spec, Trace{1}, 2), Trace{1});
  // prefix summaries of [s0, s1] are distinct
  EXPECT_EQ(contract(k, spec, Trace{0, 1}, 0), (Trace{0, 1}));
}

TEST(Bisim, ContractionProperties) {
  std::mt19937_64 rng(9);
  for (int m = 0; m < 4; ++m) {
    const KripkeStructure k = m == 0 ? k0() : hsmc::testing::random_kripke(rng, 3);
    const SpecSet spec({parse_regex("p . q*"), parse_regex("true . true")}, k.props());
    SummaryTable table(k, spec);
    for (const Trace& t : hsmc::testing::all_traces(k, 7)) {
      for (std::size_t h = 0; h <= 2; ++h) {
        const Contraction c = contract_trace(table, t, h);
        ASSERT_EQ(c.trace.first(), t.first());
        ASSERT_EQ(c.trace.last(), t.last());
        ASSERT_TRUE(k.is_trace(c.trace));
        ASSERT_EQ(c.steps == 0, c.trace == t);
        ASSERT_EQ(sampling_ids(table, t, h), sampling_ids(table, c.trace, h));
        ASSERT_EQ(contract(table, c.trace, h), c.trace);
        // no contractible pair is left
        const auto ids = table.prefixes(c.trace);
        const PositionSet ps = h_prefix_sampling(table, c.trace, h);
        for (std::size_t s = 0; s + 1 < ps.size(); ++s)
          for (std::size_t x = ps[s] + 1; x < ps[s + 1]; ++x)
            for (std::size_t y = x + 1; y < ps[s + 1]; ++y) ASSERT_NE(ids[x - 1], ids[y - 1]);
      }
    }
  }
}

TEST(Bisim, CertificateBound) {
  const KripkeStructure one = hsmc::testing::single_loop();
  const SpecSet p1({parse_regex("p")}, one.props());
  EXPECT_EQ(certificate_bound(one, p1, 0), 256);
  const KripkeStructure k = k0();
  const SpecSet p2({parse_regex("p")}, k.props());
  EXPECT_EQ(certificate_bound(k, p2, 0), 1024);
  EXPECT_LT(certificate_bound(k, p2, 0), certificate_bound(k, p2, 1));
  EXPECT_LT(certificate_bound(k, p2, 1), certificate_bound(k, p2, 2));
  EXPECT_EQ(sampling_size_bound(k, p2, 0), 32);
}
