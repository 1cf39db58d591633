#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "moodlex/corpus.hpp"
#include "moodlex/textproc.hpp"

namespace moodlex {

struct SparseEntry {
  std::size_t col;
  double value;
};

// Row-major sparse matrix; per-row entries are kept sorted by column with no
// duplicates and no stored zeros.
class SparseMatrix {
 public:
  SparseMatrix(std::size_t n_rows, std::size_t n_cols)
      : n_rows_(n_rows), n_cols_(n_cols), rows_(n_rows) {}

  std::size_t n_rows() const { return n_rows_; }
  std::size_t n_cols() const { return n_cols_; }
  const std::vector<SparseEntry>& row(std::size_t r) const { return rows_[r]; }

  // Appends (col, value) to `row`; columns must arrive in ascending order
  // and zeros are skipped.
  void push(std::size_t row, std::size_t col, double value);

  std::size_t nnz() const;

 private:
  std::size_t n_rows_;
  std::size_t n_cols_;
  std::vector<std::vector<SparseEntry>> rows_;
};

struct LexiconProvenance {
  std::size_t corpus_documents = 0;         // documents the matrices saw
  std::size_t documents_before_filter = 0;  // size before filter_untagged
  bool filtered = false;
  std::uint64_t seed = 0;
  std::vector<std::string> dropped_terms;   // zero rows removed at normalization
  std::size_t expanded_terms = 0;           // entries added by embedding expansion
};

// Term -> emotion score vector. Rows built by this pipeline are simplex
// vectors (non-negative, summing to 1).
struct Lexicon {
  EmotionSpace space;
  WordRep rep = WordRep::Token;
  long long cutoff = 1;
  std::map<std::string, EmotionVector> entries;
  LexiconProvenance provenance;

  std::size_t size() const { return entries.size(); }
  // Null when the term is not in the lexicon.
  const EmotionVector* lookup(const std::string& term) const;
};

// Document-by-emotion matrix: row d = vote_percentages(doc d). Zero-vote
// documents yield all-zero rows (they occur only when filtering is off).
SparseMatrix build_mde(const Corpus& corpus);

// Word-by-document matrix of per-document relative frequencies over
// in-vocabulary terms; each column with at least one in-vocabulary term
// sums to 1.
SparseMatrix build_mwd(const Corpus& corpus, const Vocabulary& vocab);

// Raw word-by-emotion matrix: row w = sum over documents of
// M_WD[w][d] * M_DE[d][.], accumulated in ascending document order.
std::vector<EmotionVector> multiply_we(const SparseMatrix& mwd,
                                       const SparseMatrix& mde,
                                       int threads = 1);

// Column-normalizes (divide by column sum, zero columns untouched) then
// row-normalizes. All-zero rows come back absent; callers drop them.
std::vector<std::optional<EmotionVector>> normalize_we(
    const std::vector<EmotionVector>& raw);

// Full pipeline: optional filter, vocabulary, M_WD x M_DE, normalization.
// Deterministic for fixed inputs.
Lexicon build_lexicon(const Corpus& corpus, WordRep rep, long long cutoff,
                      bool filter_untagged_docs, int threads = 1);

// TSV layout: header `term<TAB>label1...<TAB>labelN`, one row per term with
// 6-decimal scores, plus a `<path>.meta.json` sidecar carrying rep, cutoff,
// filter flag and corpus stats.
void save_lexicon(const Lexicon& lexicon, const std::filesystem::path& path);

// Reads the layout above, or any published term + N-score-column TSV.
// Rows must be non-negative and sum to 1 within `row_sum_tolerance`
// (published files print 2 decimals, hence the loose default). When the
// sidecar is missing, rep defaults to Token and cutoff to 1.
Lexicon load_lexicon(const std::filesystem::path& path,
                     double row_sum_tolerance = 0.02);

}  // namespace moodlex
