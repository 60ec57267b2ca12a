#include <benchmark/benchmark.h>

#include "fok/construct.hpp"
#include "fok/search.hpp"
#include "fok/synthesize.hpp"

using namespace fok;

namespace {

void BM_EnumerateModels(benchmark::State& state) {
  const SearchBounds b{static_cast<int>(state.range(0)), 2, FrameShape::Poset, false};
  const std::map<std::string, unsigned> preds{{"p", 1}, {"r", 0}};
  for (auto _ : state) {
    const auto n = enumerate_models(preds, b, [](const KripkeModel&) { return true; });
    benchmark::DoNotOptimize(n);
  }
}
BENCHMARK(BM_EnumerateModels)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_DecideOrSequentCd(benchmark::State& state) {
  SynthesisOptions opts;
  opts.run_cd_search = false;
  const auto cert = synthesize("or", builtin("or"), opts);
  const SearchBounds b{static_cast<int>(state.range(0)), 2, FrameShape::Tree, true};
  for (auto _ : state) {
    const auto v = decide(cert.sequent, Mode::ConstantDomain, b, {1, false});
    benchmark::DoNotOptimize(v.models_examined);
  }
}
BENCHMARK(BM_DecideOrSequentCd)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_CompleteKStarTree(benchmark::State& state) {
  const auto t = unravel_strict(kstar(), 0);
  for (auto _ : state) {
    const auto c = complete_to_constant_domain(t);
    benchmark::DoNotOptimize(c.elements.size());
  }
}
BENCHMARK(BM_CompleteKStarTree);

}  // namespace
