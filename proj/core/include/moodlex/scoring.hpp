#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "moodlex/corpus.hpp"
#include "moodlex/induction.hpp"

namespace moodlex {

struct ScoredText {
  std::optional<EmotionVector> scores;  // absent iff covered == 0
  std::size_t covered = 0;
  std::size_t total = 0;
};

// Component-wise mean of the lexicon vectors of covered terms, every
// occurrence counted.
ScoredText score_text(const Lexicon& lexicon,
                      const std::vector<std::string>& terms);

// Sample Pearson correlation. Throws ComputeError when either series is
// constant (the correlation is undefined).
double pearson(std::span<const double> xs, std::span<const double> ys);

struct EmotionCorrelation {
  std::string label;
  std::optional<double> r;  // absent when undefined for this emotion
  std::string note;         // reason when r is absent
};

struct EvalReport {
  std::vector<EmotionCorrelation> per_emotion;
  std::optional<double> average;  // mean of the defined per-emotion values
  double mean_coverage = 0.0;
  std::size_t documents_total = 0;
  std::size_t documents_used = 0;
  std::size_t excluded_zero_coverage = 0;
  std::size_t excluded_zero_votes = 0;
  std::map<std::string, std::string> config;  // resolved run config echo
};

// Serialization used by the CLI and by CV reports: a '#'-commented TSV table
// and a single-line JSON record.
std::string report_to_tsv(const EvalReport& report);
std::string report_to_jsonl(const EvalReport& report);

// Per-emotion Pearson between averaged lexicon scores and gold vote
// percentages over the test documents. Documents with zero coverage or zero
// votes are excluded pairwise; exclusion counts are reported.
EvalReport evaluate(const Lexicon& lexicon, const Corpus& test, WordRep rep,
                    int threads = 1);

struct CoverageStats {
  std::vector<std::pair<std::string, double>> per_document;  // id -> ratio
  double mean = 0.0;
};

// covered/total per document, ignoring documents with no terms.
CoverageStats coverage_stats(const Lexicon& lexicon, const Corpus& test,
                             WordRep rep);

struct CurvePoint {
  std::size_t size;
  double average_r;
};

// Builds lexica on nested seeded random subsets of ascending size and
// evaluates each on the fixed test set.
std::vector<CurvePoint> learning_curve(const Corpus& corpus,
                                       const Corpus& test, WordRep rep,
                                       const std::vector<std::size_t>& sizes,
                                       long long cutoff, std::uint64_t seed,
                                       int threads = 1);

struct SweepCell {
  WordRep rep;
  long long cutoff;
  bool filtered;
  std::size_t lexicon_size;
  EvalReport report;
};

// Cross-product of (rep, cutoff, filter flag): build on `corpus`, evaluate
// on `test`.
std::vector<SweepCell> sweep(const Corpus& corpus, const Corpus& test,
                             const std::vector<WordRep>& reps,
                             const std::vector<long long>& cutoffs,
                             const std::vector<bool>& filter_flags,
                             int threads = 1);

}  // namespace moodlex
