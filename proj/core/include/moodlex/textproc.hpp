#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "moodlex/corpus.hpp"

namespace moodlex {

// Term granularity: raw token, lemma, or lemma#PoS compound.
enum class WordRep { Token, Lemma, LemmaPos };

std::string to_string(WordRep rep);
WordRep word_rep_from_string(std::string_view name);

// Lowercases (ASCII plus Latin-1/Latin-A, Greek and Cyrillic base ranges)
// and strips leading/trailing punctuation and whitespace. Internal
// punctuation is kept ("don't" stays intact). Returns "" when nothing
// remains; callers drop such tokens.
std::string normalize_surface(std::string_view s);

// Maps a token to its term under the representation:
//   Token    -> normalized surface
//   Lemma    -> normalized lemma, falling back to the surface when absent
//   LemmaPos -> "<lemma>#<POS>" with the tag uppercased; "#X" when the tag
//               is absent
// Absent when normalization leaves nothing.
std::optional<std::string> to_term(const AnnotatedToken& tok, WordRep rep);

// to_term over the document, dropping empties, order preserved.
std::vector<std::string> term_stream(const RawDocument& doc, WordRep rep);

// Term -> dense index map under a representation and frequency cutoff.
// Indices are assigned in lexicographic term order so downstream matrix
// layouts are reproducible.
class Vocabulary {
 public:
  Vocabulary() = default;
  Vocabulary(WordRep rep, long long cutoff, std::vector<std::string> terms,
             std::vector<long long> frequencies);

  WordRep rep() const { return rep_; }
  long long cutoff() const { return cutoff_; }
  std::size_t size() const { return terms_.size(); }
  const std::vector<std::string>& terms() const { return terms_; }
  const std::string& term(std::size_t index) const { return terms_[index]; }
  long long frequency(std::size_t index) const { return frequencies_[index]; }
  std::optional<std::size_t> index_of(std::string_view term) const;

 private:
  struct TransparentHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
      return std::hash<std::string_view>{}(s);
    }
  };

  WordRep rep_ = WordRep::Token;
  long long cutoff_ = 1;
  std::vector<std::string> terms_;
  std::vector<long long> frequencies_;
  std::unordered_map<std::string, std::size_t, TransparentHash, std::equal_to<>>
      index_;
};

// Counts term occurrences over the corpus and keeps terms with total
// frequency >= cutoff. Cutoff 1 keeps everything, hapax included.
Vocabulary build_vocabulary(const Corpus& corpus, WordRep rep,
                            long long cutoff);

}  // namespace moodlex
