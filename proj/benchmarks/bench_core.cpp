#include <benchmark/benchmark.h>

#include <random>

#include "hsmc/bisim.hpp"
#include "hsmc/checker.hpp"
#include "hsmc/formula.hpp"
#include "hsmc/kripke.hpp"
#include "hsmc/relang.hpp"
#include "hsmc/summary.hpp"

namespace {

using namespace hsmc;

KripkeStructure k0() {
  return parse_model(
      "props: p q\nstates: s0 s1\ninit: s0\n"
      "edge: s0 s1\nedge: s1 s0\nedge: s1 s1\n"
      "label s0: p\nlabel s1: q\n");
}

// Random walk of the given length from the initial state.
Trace walk(const KripkeStructure& k, std::size_t len, std::mt19937& rng) {
  Trace t{k.initial()};
  while (t.size() < len) {
    const auto& next = k.successors(t.last());
    t.steps.push_back(next[rng() % next.size()]);
  }
  return t;
}

void BM_SummaryExtend(benchmark::State& state) {
  const KripkeStructure k = k0();
  const SpecSet spec({parse_regex("p . (q | p)* . q"), parse_regex("true* . q . q")}, k.props());
  std::mt19937 rng(1);
  const Trace t = walk(k, static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) {
    Summary s = summary_of(k, spec, Trace{t.first()});
    for (std::size_t i = 1; i < t.size(); ++i) s = extend_summary(s, spec, k.label(t.steps[i]), t.steps[i]);
    benchmark::DoNotOptimize(s);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SummaryExtend)->Arg(16)->Arg(256)->Arg(4096);

void BM_Contract(benchmark::State& state) {
  const KripkeStructure k = k0();
  const SpecSet spec({parse_regex("p . (q | p)* . q"), parse_regex("true* . q . q")}, k.props());
  SummaryTable table(k, spec);
  std::mt19937 rng(2);
  const Trace t = walk(k, static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(contract(table, t, static_cast<std::size_t>(state.range(1))));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Contract)->Args({64, 1})->Args({512, 1})->Args({512, 2});

void BM_ModelCheck(benchmark::State& state) {
  const KripkeStructure k = k0();
  const char* texts[] = {"{p . true*}", "[~B] <B> {p . q*}", "<~B> ([~B] {true* . q} | <B> {p})"};
  const HsFormula phi = parse_formula(texts[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(model_check(k, phi).satisfied);
}
BENCHMARK(BM_ModelCheck)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
