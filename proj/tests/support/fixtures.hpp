#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "moodlex/corpus.hpp"
#include "moodlex/embed.hpp"
#include "moodlex/induction.hpp"

namespace fixtures {

moodlex::EmotionSpace space2();  // happy, sad
moodlex::EmotionSpace space4();  // afraid, amused, happy, sad

moodlex::RawDocument doc(std::string id, const std::vector<std::string>& words,
                         std::vector<long long> votes);

// Term profiles are integer numerators over 16 (they sum to 16), so every
// derived percentage is an exact binary fraction.
using Profile = std::pair<std::string, std::vector<int>>;

moodlex::EmotionVector profile16(const std::vector<int>& numerators);

// Lexicon assembled directly from profiles (rep Token, cutoff 1).
moodlex::Lexicon hand_lexicon(const moodlex::EmotionSpace& space,
                              const std::vector<Profile>& profiles);

// Corpus whose vote percentages equal the mean of its words' profile
// vectors exactly: votes are the summed integer numerators.
moodlex::Corpus identity_corpus(
    const moodlex::EmotionSpace& space, const std::vector<Profile>& profiles,
    const std::vector<std::vector<std::string>>& docs);

// Random corpus for property tests: synthetic vocabulary, random token
// streams, occasional zero-vote documents.
moodlex::Corpus random_corpus(std::uint64_t seed, std::size_t n_docs,
                              std::size_t vocab_size, std::size_t n_emotions,
                              double zero_vote_prob = 0.1);

struct NoisyCorpus {
  moodlex::Corpus train;
  moodlex::Corpus test;
};

// Four-emotion corpus with emotion-pure signal words (train frequency >= 10)
// plus `n_hapax` one-off noise words scattered over emotion-scrambled
// documents. Test documents mix signal words with some of those noise words,
// so a frequency cutoff cleans the predictions.
NoisyCorpus noisy_corpus(std::uint64_t seed, std::size_t n_signal,
                         std::size_t n_hapax);

// Same signal corpus, but with a fifth of the training documents zero-voted
// and stuffed with "scrambled" words that also leak (rarely) into tagged
// documents. Filtering drops the zero-vote mass below the cutoff.
NoisyCorpus scrambled_corpus(std::uint64_t seed, std::size_t n_signal,
                             std::size_t n_scrambled);

// Hand lexicon plus `n_docs` identity-corpus documents: gold percentages
// equal the averaged lexicon scores exactly, so regressions on the features
// are noiseless.
std::pair<moodlex::Lexicon, moodlex::Corpus> linear_identity_fixture(
    std::uint64_t seed, std::size_t n_docs);

// Signal words with per-document vote contamination: lexicon rows converge
// to the true emotions as the corpus grows, so learning curves climb.
NoisyCorpus curve_corpus(std::uint64_t seed, std::size_t n_docs);

// Clustered embedding world: words in a cluster share one emotion profile
// and sit close together in embedding space, far from other clusters, so a
// removed word's nearest surviving neighbor carries its exact vector.
struct ClusterWorld {
  moodlex::Lexicon lexicon;
  moodlex::EmbeddingModel model;
  moodlex::Corpus test;
};
ClusterWorld cluster_world(std::uint64_t seed);

// Eight-emotion excerpt rows (2-decimal scores) in the published TSV layout.
const char* published_excerpt_tsv();

class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path file(const std::string& name) const {
    return path_ / name;
  }

 private:
  std::filesystem::path path_;
};

void write_file(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

}  // namespace fixtures
