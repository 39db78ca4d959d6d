#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "silverlab/choice.hpp"
#include "silverlab/delta_tree.hpp"
#include "silverlab/dense_oracle.hpp"
#include "silverlab/density.hpp"
#include "silverlab/speclang.hpp"
#include "silverlab/swr.hpp"

using namespace silverlab;

static void BM_AlphaArith(benchmark::State& st) {
  const auto a = Coalition::arith(1, 3) | Coalition::geom(1, 2);
  const auto n = static_cast<std::uint64_t>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(alpha(a, n));
  st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_AlphaArith)->RangeMultiplier(10)->Range(100, 100000)->Complexity();

static void BM_AlphaPeriodic(benchmark::State& st) {
  const auto a = ~Coalition::periodic("01", "0010111");
  const auto n = static_cast<std::uint64_t>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(alpha(a, n));
}
BENCHMARK(BM_AlphaPeriodic)->RangeMultiplier(10)->Range(100, 100000);

static void BM_IrrelevantMajority(benchmark::State& st) {
  std::vector<std::uint64_t> support;
  for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(st.range(0)); ++i) support.push_back(i);
  const auto F = ChoiceFunction::majority(support, 0);
  const auto b = Coalition::arith(0, 2);
  const PartialAssignment f(Alphabet::bounded(2), b, {}, EventuallyPeriodicSeq::constant(Alphabet::bounded(2), 1));
  for (auto _ : st) benchmark::DoNotOptimize(is_irrelevant(F, b, f));
}
BENCHMARK(BM_IrrelevantMajority)->DenseRange(3, 15, 4);

static void BM_DeltaTree(benchmark::State& st) {
  const std::vector<DenseOracle> oracles{DenseOracle::identity(), DenseOracle::ones(2), DenseOracle::ones(3)};
  const auto rounds = static_cast<std::uint64_t>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(build_delta_tree(oracles, Rational(3, 4), rounds));
}
BENCHMARK(BM_DeltaTree)->DenseRange(1, 3);

static void BM_CaseWitness(benchmark::State& st) {
  const auto K = Alphabet::bounded(2);
  const PartialAssignment f(K, ~Coalition::arith(0, 5), {}, EventuallyPeriodicSeq::constant(K, 0));
  for (auto _ : st)
    for (auto c : {Case::EPrecO, Case::OPrecE, Case::Equiv})
      benchmark::DoNotOptimize(check_bundle(case_witness(f, Rational(3, 4), c, Variant::SeFa)));
}
BENCHMARK(BM_CaseWitness);

static std::string corpus_file(const char* name) {
  std::ifstream in(std::string(SILVERLAB_CORPUS_DIR) + "/" + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

static void BM_Parse(benchmark::State& st) {
  const auto text = corpus_file("swr_eo.svl");
  for (auto _ : st) benchmark::DoNotOptimize(lang::parse(text));
  st.SetBytesProcessed(static_cast<std::int64_t>(st.iterations() * text.size()));
}
BENCHMARK(BM_Parse);

static void BM_ParseErrorRepair(benchmark::State& st) {
  auto text = corpus_file("swr_eo.svl");
  text.erase(text.rfind(')'), 1);
  for (auto _ : st) {
    try {
      lang::parse(text);
    } catch (const lang::ParseError& e) {
      benchmark::DoNotOptimize(e.loc);
    }
  }
}
BENCHMARK(BM_ParseErrorRepair);

BENCHMARK_MAIN();
