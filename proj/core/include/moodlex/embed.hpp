#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "moodlex/corpus.hpp"
#include "moodlex/induction.hpp"

namespace moodlex {

// Term -> dense vector of a fixed dimension. Zero-norm vectors are dropped
// at load and duplicate terms keep their first occurrence; both are counted.
struct EmbeddingModel {
  std::size_t dimension = 0;
  std::map<std::string, std::vector<double>> vectors;
  std::size_t dropped_zero_norm = 0;
  std::size_t duplicates_ignored = 0;

  const std::vector<double>* lookup(const std::string& term) const;
};

// Text format: optional first line "count dimension", then one term followed
// by `dimension` reals per line. Dimension mismatches and unparsable lines
// are reported with their line number.
EmbeddingModel load_embeddings(const std::filesystem::path& path);

// 1 - cos(u, v), in [0, 2]. Zero-norm inputs raise ComputeError.
double cosine_distance(std::span<const double> u, std::span<const double> v);

struct ExpansionRecord {
  std::string word;   // the out-of-vocabulary word
  std::string donor;  // nearest in-lexicon neighbor
  double distance = 0.0;
};

// Scans lexicon terms that have embeddings and returns the cosine-distance
// minimizer, ties broken lexicographically. Absent when `word` has no
// embedding or no lexicon term has one.
std::optional<ExpansionRecord> nearest_in_lexicon(const std::string& word,
                                                  const Lexicon& lexicon,
                                                  const EmbeddingModel& model);

struct ExpansionResult {
  Lexicon lexicon;  // base entries unchanged plus resolved targets
  std::vector<ExpansionRecord> records;
  std::vector<std::string> unresolved;  // targets without a donor
  std::size_t lexicon_terms_without_embedding = 0;  // ineligible donors
};

// Assigns each resolvable out-of-vocabulary target the emotion vector of its
// nearest in-lexicon neighbor. Base entries are never overwritten.
ExpansionResult expand_lexicon(const Lexicon& lexicon,
                               const EmbeddingModel& model,
                               const std::set<std::string>& targets,
                               int threads = 1);

std::string records_to_tsv(const ExpansionResult& result);

struct AblationPoint {
  double keep_fraction;
  double r_reduced;
  double r_expanded;
  double coverage_reduced;
  double coverage_expanded;
};

// For each keep fraction: retain a seeded random subset of lexicon entries,
// re-expand with the removed terms as targets, evaluate both variants on the
// fixed test set. Subsets are nested across fractions for a fixed seed.
std::vector<AblationPoint> ablation(const Lexicon& lexicon,
                                    const EmbeddingModel& model,
                                    const Corpus& test, WordRep rep,
                                    const std::vector<double>& keep_fractions,
                                    std::uint64_t seed, int threads = 1);

}  // namespace moodlex
