#include <benchmark/benchmark.h>

#include "bench_util.hpp"
#include "moodlex/induction.hpp"
#include "moodlex/textproc.hpp"

namespace {

void BM_BuildLexicon(benchmark::State& state) {
  auto corpus = bench::make_corpus(static_cast<std::size_t>(state.range(0)),
                                   2000, 60, 42);
  for (auto _ : state) {
    auto lex = moodlex::build_lexicon(corpus, moodlex::WordRep::Token, 1, true);
    benchmark::DoNotOptimize(lex);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_BuildLexiconThreaded(benchmark::State& state) {
  auto corpus = bench::make_corpus(2000, 2000, 60, 42);
  int threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto lex =
        moodlex::build_lexicon(corpus, moodlex::WordRep::Token, 1, true, threads);
    benchmark::DoNotOptimize(lex);
  }
}

void BM_MultiplyWe(benchmark::State& state) {
  auto corpus = bench::make_corpus(static_cast<std::size_t>(state.range(0)),
                                   1500, 50, 7);
  auto vocab = moodlex::build_vocabulary(corpus, moodlex::WordRep::Token, 1);
  auto mwd = moodlex::build_mwd(corpus, vocab);
  auto mde = moodlex::build_mde(corpus);
  for (auto _ : state) {
    auto raw = moodlex::multiply_we(mwd, mde);
    benchmark::DoNotOptimize(raw);
  }
}

}  // namespace

BENCHMARK(BM_BuildLexicon)->Arg(200)->Arg(1000)->Arg(4000)
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BuildLexiconThreaded)->Arg(1)->Arg(2)->Arg(4)
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MultiplyWe)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
