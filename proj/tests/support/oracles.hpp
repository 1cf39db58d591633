#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "moodlex/corpus.hpp"
#include "moodlex/embed.hpp"
#include "moodlex/induction.hpp"

namespace oracles {

// Straightforward dense reference of the induction pipeline: dense counts,
// per-document relative frequencies, dense vote-percentage matrix, a triple
// loop product, then column- and row-normalization with zero rows dropped.
// Independent of the sparse implementation it checks.
std::map<std::string, moodlex::EmotionVector> dense_lexicon(
    const moodlex::Corpus& corpus, moodlex::WordRep rep, long long cutoff);

struct GdModel {
  std::vector<double> weights;
  double intercept = 0.0;
};

// Full-batch gradient descent on ||y - Xw - b||^2 + ridge*||w||^2, run to a
// tiny gradient norm. Slow but has no shared machinery with fit_linear.
GdModel gd_fit(const std::vector<std::vector<double>>& X,
               const std::vector<double>& y, double ridge,
               std::size_t max_iters = 4000000);

// Definitional exhaustive scan for the nearest in-lexicon embedding
// neighbor, ties to the lexicographically smallest term.
std::optional<moodlex::ExpansionRecord> brute_nearest(
    const std::string& word, const moodlex::Lexicon& lexicon,
    const moodlex::EmbeddingModel& model);

}  // namespace oracles
