#pragma once

#include <random>
#include <string>
#include <vector>

#include "moodlex/corpus.hpp"

namespace bench {

// Synthetic corpus with a Zipf-ish vocabulary; enough structure to keep the
// pipeline honest without fixture files.
inline moodlex::Corpus make_corpus(std::size_t n_docs, std::size_t vocab_size,
                                   std::size_t doc_len, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  moodlex::Corpus corpus;
  corpus.space = moodlex::EmotionSpace(
      {"afraid", "amused", "angry", "annoyed", "dont_care", "happy",
       "inspired", "sad"});
  for (std::size_t d = 0; d < n_docs; ++d) {
    moodlex::RawDocument doc;
    doc.id = "d" + std::to_string(d);
    for (std::size_t i = 0; i < doc_len; ++i) {
      std::size_t r = rng() % (vocab_size * vocab_size);
      std::size_t w = r % vocab_size;
      w = std::min(w, (r / vocab_size) % vocab_size);  // skew toward low ids
      doc.tokens.push_back(
          moodlex::AnnotatedToken{"w" + std::to_string(w), {}, {}});
    }
    doc.votes.assign(corpus.space.size(), 0);
    for (auto& v : doc.votes) v = static_cast<long long>(rng() % 20);
    corpus.documents.push_back(std::move(doc));
  }
  return corpus;
}

}  // namespace bench
