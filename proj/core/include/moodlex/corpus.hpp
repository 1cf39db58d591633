#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "moodlex/error.hpp"

namespace moodlex {

// Ordered list of emotion labels. Fixes the dimensionality and component
// order of every emotion vector derived from a corpus.
class EmotionSpace {
 public:
  EmotionSpace() = default;
  explicit EmotionSpace(std::vector<std::string> labels);

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  std::optional<std::size_t> index_of(std::string_view label) const;

  bool operator==(const EmotionSpace& other) const {
    return labels_ == other.labels_;
  }

 private:
  std::vector<std::string> labels_;
};

// Emotion vector aligned with an EmotionSpace. Vectors produced by
// vote_percentages or lexicon lookup sum to 1; "no signal" is expressed by
// absence, never by NaN.
using EmotionVector = std::vector<double>;

struct AnnotatedToken {
  std::string surface;
  std::optional<std::string> lemma;
  std::optional<std::string> pos;

  bool operator==(const AnnotatedToken&) const = default;
};

// One document: annotated token stream plus per-emotion vote counts aligned
// with the corpus EmotionSpace.
struct RawDocument {
  std::string id;
  std::vector<AnnotatedToken> tokens;
  std::vector<long long> votes;

  long long total_votes() const {
    long long t = 0;
    for (long long v : votes) t += v;
    return t;
  }

  bool operator==(const RawDocument&) const = default;
};

struct Corpus {
  EmotionSpace space;
  std::vector<RawDocument> documents;

  bool operator==(const Corpus&) const = default;
};

enum class CorpusFormat { Jsonl, Tsv };

// Parses "jsonl" / "tsv"; "auto" picks by file extension (.tsv -> Tsv).
CorpusFormat corpus_format_from_string(std::string_view name,
                                       const std::filesystem::path& path);

// Loads a corpus file. JSONL: header record declaring `labels`, then one
// record per document. TSV: `#labels<TAB>a,b,c` header, then
// `id<TAB>raw text<TAB>label:count,...` rows with whitespace tokenization.
// Malformed records are reported with their line number.
Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format);

// Writes the JSONL corpus format; load_corpus(save_corpus(c)) == c.
void save_corpus(const Corpus& corpus, const std::filesystem::path& path);

// Keeps exactly the documents with a non-zero vote total, order preserved.
Corpus filter_untagged(const Corpus& corpus);

// Vote counts divided by their total; absent when the total is zero.
std::optional<EmotionVector> vote_percentages(const RawDocument& doc,
                                              const EmotionSpace& space);

// Index of the highest-voted emotion (lowest index wins ties); absent for
// zero-vote documents.
std::optional<std::size_t> dominant_emotion(const RawDocument& doc);

// Seeded random split into (train, test) with |test| = round(fraction * n).
// Sampling shuffles document indices sorted by id, so the split depends only
// on (contents, fraction, seed). Original document order is preserved within
// each part.
std::pair<Corpus, Corpus> split_holdout(const Corpus& corpus,
                                        double holdout_fraction,
                                        std::uint64_t seed);

}  // namespace moodlex
