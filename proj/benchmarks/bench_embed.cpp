#include <benchmark/benchmark.h>

#include <random>

#include "moodlex/embed.hpp"
#include "moodlex/induction.hpp"

namespace {

struct EmbedSetup {
  moodlex::Lexicon lexicon;
  moodlex::EmbeddingModel model;
  std::vector<std::string> queries;
};

EmbedSetup make_setup(std::size_t lexicon_terms, std::size_t dim) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  EmbedSetup setup;
  setup.model.dimension = dim;
  setup.lexicon.space =
      moodlex::EmotionSpace({"afraid", "amused", "happy", "sad"});
  for (std::size_t i = 0; i < lexicon_terms; ++i) {
    std::string term = "lex" + std::to_string(i);
    std::vector<double> v(dim);
    for (auto& x : v) x = dist(rng);
    setup.model.vectors.emplace(term, std::move(v));
    setup.lexicon.entries.emplace(term,
                                  moodlex::EmotionVector{0.25, 0.25, 0.25, 0.25});
  }
  for (std::size_t i = 0; i < 64; ++i) {
    std::string term = "query" + std::to_string(i);
    std::vector<double> v(dim);
    for (auto& x : v) x = dist(rng);
    setup.model.vectors.emplace(term, std::move(v));
    setup.queries.push_back(std::move(term));
  }
  return setup;
}

void BM_NearestInLexicon(benchmark::State& state) {
  auto setup = make_setup(static_cast<std::size_t>(state.range(0)), 64);
  std::size_t q = 0;
  for (auto _ : state) {
    auto hit = moodlex::nearest_in_lexicon(
        setup.queries[q++ % setup.queries.size()], setup.lexicon, setup.model);
    benchmark::DoNotOptimize(hit);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ExpandLexicon(benchmark::State& state) {
  auto setup = make_setup(2000, 64);
  std::set<std::string> targets(setup.queries.begin(), setup.queries.end());
  int threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto result =
        moodlex::expand_lexicon(setup.lexicon, setup.model, targets, threads);
    benchmark::DoNotOptimize(result);
  }
}

}  // namespace

BENCHMARK(BM_NearestInLexicon)->Arg(500)->Arg(5000);
BENCHMARK(BM_ExpandLexicon)->Arg(1)->Arg(2)->Arg(4)
    ->Unit(benchmark::kMillisecond);
