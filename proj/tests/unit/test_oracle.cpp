#include <gtest/gtest.h>

#include <random>

#include "hsmc/error.hpp"
#include "hsmc/oracle.hpp"
#include "support.hpp"

using namespace hsmc;
using hsmc::testing::k0;

namespace {

HsFormula f(const char* text) { return parse_formula(text); }

}  // namespace

TEST(Oracle, Examples) {
  const KripkeStructure k = k0();
  EXPECT_TRUE(oracle_holds(k, Trace{0}, f("{p}"), 1));
  EXPECT_TRUE(oracle_holds(k, Trace{0}, f("{p}"), 7));
  EXPECT_TRUE(oracle_holds(k, Trace{0, 1}, f("<B>{p}"), 2));
  EXPECT_TRUE(oracle_holds(k, Trace{0}, f("<~B>{p . q}"), 2));
  EXPECT_FALSE(oracle_holds(k, Trace{0}, f("<~B>{p . q}"), 1));
  EXPECT_TRUE(oracle_model_check(k, f("{p . true*}"), 4));
  EXPECT_FALSE(oracle_model_check(k, f("{p . q*}"), 3));
  EXPECT_TRUE(oracle_model_check(k, f("{p . q*}"), 2));
}

TEST(Oracle, CounterexampleIsShortestThenLexicographic) {
  const KripkeStructure k = k0();
  Oracle o(k, 5);
  EXPECT_EQ(o.counterexample(f("{p . q*}")), (Trace{0, 1, 0}));
  EXPECT_EQ(o.counterexample(f("{p}")), (Trace{0, 1}));
  EXPECT_FALSE(o.counterexample(f("{p . true*}")).has_value());
  EXPECT_EQ(o.bound(), 5u);
}

TEST(Oracle, InitialStateWithoutSuccessors) {
  const KripkeStructure k({"p"}, {"a", "b"}, {{1, 0}}, {PropSet::of({0}), PropSet{}}, 0);
  // only [a] is an initial trace
  EXPECT_TRUE(oracle_model_check(k, f("{p}"), 6));
  EXPECT_TRUE(oracle_model_check(k, f("[~B]{false}"), 6));
  EXPECT_TRUE(oracle_model_check(k, f("<~A>{true . p}"), 6));
}

TEST(Oracle, RejectsZeroBoundAndInvalidTraces) {
  const KripkeStructure k = k0();
  EXPECT_THROW(Oracle(k, 0), PreconditionError);
  Oracle o(k, 3);
  EXPECT_THROW(o.holds(f("{p}"), Trace{0, 0}), PreconditionError);
}

TEST(Oracle, QuantifierRanges) {
  const KripkeStructure k = k0();
  Oracle o(k, 4);
  // A ranges over traces leaving the last state, including the point trace
  EXPECT_TRUE(o.holds(f("<A>{q}"), Trace{0, 1}));
  EXPECT_FALSE(o.holds(f("<A>{q}"), Trace{1, 0}));
  // Abar ranges over traces reaching the first state
  EXPECT_TRUE(o.holds(f("<~A>{q . p}"), Trace{0}));
  // E: proper suffixes
  EXPECT_TRUE(o.holds(f("<E>{q}"), Trace{0, 1}));
  EXPECT_FALSE(o.holds(f("<E>{p}"), Trace{0, 1}));
  // Ebar: strictly longer traces ending with rho
  EXPECT_TRUE(o.holds(f("<~E>{q . q}"), Trace{1}));
  EXPECT_FALSE(o.holds(f("<~E>{q}"), Trace{1}));
  EXPECT_TRUE(o.holds(f("[~B]{p . q . true*}"), Trace{0}));
}

TEST(Oracle, BAndEDoNotDependOnBound) {
  std::mt19937_64 rng(31);
  const std::vector<RegExpr> pool{parse_regex("p"), parse_regex("q . p*"), parse_regex("true . true")};
  const ModalityMask be = mask_of(Modality::B) | mask_of(Modality::E);
  const KripkeStructure k = k0();
  const auto traces = hsmc::testing::all_traces(k, 4);
  Oracle small(k, 4), large(k, 7);
  for (int i = 0; i < 200; ++i) {
    const HsFormula phi = hsmc::testing::random_formula(rng, pool, be, 1 + i % 6, true);
    for (const Trace& t : traces) ASSERT_EQ(small.holds(phi, t), large.holds(phi, t)) << phi.to_string();
  }
}

TEST(Oracle, BoxDiamondDualityAtEveryBound) {
  std::mt19937_64 rng(37);
  const std::vector<RegExpr> pool{parse_regex("p"), parse_regex("q . p*")};
  const ModalityMask all = mask_of(Modality::A) | mask_of(Modality::Abar) | mask_of(Modality::B) |
                           mask_of(Modality::Bbar) | mask_of(Modality::E) | mask_of(Modality::Ebar);
  const KripkeStructure k = k0();
  for (std::size_t L = 1; L <= 4; ++L) {
    Oracle o(k, L);
    const auto traces = hsmc::testing::all_traces(k, L);
    for (int i = 0; i < 60; ++i) {
      const HsFormula phi = hsmc::testing::random_formula(rng, pool, all, 1 + i % 4, false);
      for (Modality m : hsmc::testing::modalities_in(all)) {
        const HsFormula box = HsFormula::box(m, phi);
        const HsFormula not_dia_not = HsFormula::negation(HsFormula::diamond(m, HsFormula::negation(phi)));
        for (const Trace& t : traces) ASSERT_EQ(o.holds(box, t), o.holds(not_dia_not, t));
      }
    }
  }
}
