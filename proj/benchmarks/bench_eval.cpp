#include <benchmark/benchmark.h>

#include "fok/corpus.hpp"
#include "fok/synthesize.hpp"

using namespace fok;

namespace {

void BM_EvaluateCorpusOnKStar(benchmark::State& state) {
  const auto sig = corpus_signature({"not", "and", "or", "imp"});
  const auto corpus = generate_corpus(sig, {1, 100, static_cast<unsigned>(state.range(0)), 2});
  const auto k = kstar();
  for (auto _ : state) {
    std::size_t refuted = 0;
    for (const auto& s : corpus) refuted += model_validates(k, s).valid ? 0 : 1;
    benchmark::DoNotOptimize(refuted);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(corpus.size()));
}
BENCHMARK(BM_EvaluateCorpusOnKStar)->DenseRange(1, 3);

void BM_SupermultiplicativityArity4(benchmark::State& state) {
  const auto fs = enumerate_truth_functions(4);
  for (auto _ : state) {
    std::size_t n = 0;
    for (const auto& f : fs) n += is_supermultiplicative(f).holds ? 1 : 0;
    benchmark::DoNotOptimize(n);
  }
}
BENCHMARK(BM_SupermultiplicativityArity4)->Unit(benchmark::kMillisecond);

void BM_SynthesizeArity3(benchmark::State& state) {
  const auto fs = enumerate_truth_functions(3);
  SynthesisOptions opts;
  opts.run_cd_search = false;
  for (auto _ : state) {
    std::size_t n = 0;
    for (const auto& f : fs) {
      if (is_supermultiplicative(f).holds) continue;
      n += synthesize("c", f, opts).sequent_value ? 0 : 1;
    }
    benchmark::DoNotOptimize(n);
  }
}
BENCHMARK(BM_SynthesizeArity3)->Unit(benchmark::kMillisecond);

}  // namespace
