#include <benchmark/benchmark.h>

#include "bench_util.hpp"
#include "moodlex/induction.hpp"
#include "moodlex/scoring.hpp"

namespace {

void BM_ScoreText(benchmark::State& state) {
  auto corpus = bench::make_corpus(1000, 1500, 60, 3);
  auto lex = moodlex::build_lexicon(corpus, moodlex::WordRep::Token, 1, true);
  auto terms =
      moodlex::term_stream(corpus.documents.front(), moodlex::WordRep::Token);
  for (auto _ : state) {
    auto scored = moodlex::score_text(lex, terms);
    benchmark::DoNotOptimize(scored);
  }
  state.SetItemsProcessed(state.iterations() * terms.size());
}

void BM_Evaluate(benchmark::State& state) {
  auto train = bench::make_corpus(1500, 1500, 60, 5);
  auto test = bench::make_corpus(static_cast<std::size_t>(state.range(0)),
                                 1500, 60, 6);
  auto lex = moodlex::build_lexicon(train, moodlex::WordRep::Token, 1, true);
  for (auto _ : state) {
    auto report = moodlex::evaluate(lex, test, moodlex::WordRep::Token);
    benchmark::DoNotOptimize(report);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_ScoreText);
BENCHMARK(BM_Evaluate)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);
