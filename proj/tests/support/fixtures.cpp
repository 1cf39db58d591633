#include "support/fixtures.hpp"

#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace fixtures {

using namespace moodlex;

EmotionSpace space2() { return EmotionSpace({"happy", "sad"}); }

EmotionSpace space4() {
  return EmotionSpace({"afraid", "amused", "happy", "sad"});
}

RawDocument doc(std::string id, const std::vector<std::string>& words,
                std::vector<long long> votes) {
  RawDocument d;
  d.id = std::move(id);
  for (const auto& w : words) d.tokens.push_back(AnnotatedToken{w, {}, {}});
  d.votes = std::move(votes);
  return d;
}

EmotionVector profile16(const std::vector<int>& numerators) {
  EmotionVector v(numerators.size());
  for (std::size_t i = 0; i < numerators.size(); ++i)
    v[i] = numerators[i] / 16.0;
  return v;
}

Lexicon hand_lexicon(const EmotionSpace& space,
                     const std::vector<Profile>& profiles) {
  Lexicon lex;
  lex.space = space;
  lex.rep = WordRep::Token;
  lex.cutoff = 1;
  for (const auto& [term, numerators] : profiles) {
    int sum = 0;
    for (int n : numerators) sum += n;
    if (numerators.size() != space.size() || sum != 16)
      throw std::logic_error("profile for '" + term + "' must sum to 16");
    lex.entries.emplace(term, profile16(numerators));
  }
  return lex;
}

Corpus identity_corpus(const EmotionSpace& space,
                       const std::vector<Profile>& profiles,
                       const std::vector<std::vector<std::string>>& docs) {
  std::map<std::string, std::vector<int>> by_term;
  for (const auto& [term, numerators] : profiles) by_term[term] = numerators;

  Corpus corpus;
  corpus.space = space;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    std::vector<long long> votes(space.size(), 0);
    for (const auto& word : docs[d]) {
      const auto& numerators = by_term.at(word);
      for (std::size_t e = 0; e < votes.size(); ++e) votes[e] += numerators[e];
    }
    corpus.documents.push_back(doc("doc" + std::to_string(d), docs[d],
                                   std::move(votes)));
  }
  return corpus;
}

Corpus random_corpus(std::uint64_t seed, std::size_t n_docs,
                     std::size_t vocab_size, std::size_t n_emotions,
                     double zero_vote_prob) {
  std::mt19937_64 rng(seed);
  std::vector<std::string> labels;
  for (std::size_t e = 0; e < n_emotions; ++e)
    labels.push_back("emo" + std::to_string(e));

  Corpus corpus;
  corpus.space = EmotionSpace(labels);
  for (std::size_t d = 0; d < n_docs; ++d) {
    std::size_t len = rng() % 12;  // empty documents happen
    std::vector<std::string> words;
    for (std::size_t i = 0; i < len; ++i)
      words.push_back("w" + std::to_string(rng() % vocab_size));

    std::vector<long long> votes(n_emotions, 0);
    bool zero = (rng() % 1000) < static_cast<std::uint64_t>(zero_vote_prob * 1000);
    if (!zero) {
      for (auto& v : votes) v = static_cast<long long>(rng() % 9);
      votes[rng() % n_emotions] += 1;  // guarantee a positive total
    }
    corpus.documents.push_back(
        doc("d" + std::to_string(d), words, std::move(votes)));
  }
  return corpus;
}

namespace {

std::vector<long long> pure_votes(std::size_t n_emotions, std::size_t e,
                                  long long weight = 10) {
  std::vector<long long> votes(n_emotions, 0);
  votes[e] = weight;
  return votes;
}

}  // namespace

NoisyCorpus noisy_corpus(std::uint64_t seed, std::size_t n_signal,
                         std::size_t n_hapax) {
  std::mt19937_64 rng(seed);
  EmotionSpace space = space4();
  std::size_t n_emotions = space.size();
  std::size_t per_emotion = n_signal / n_emotions;

  auto signal_word = [&](std::size_t e, std::size_t i) {
    return "sig" + std::to_string(e) + "x" + std::to_string(i % per_emotion);
  };

  NoisyCorpus out;
  out.train.space = space;
  out.test.space = space;

  // 12 passes over every signal word keeps each above a cutoff of 10.
  std::size_t next_hapax = 0;
  std::size_t doc_id = 0;
  for (std::size_t pass = 0; pass < 12; ++pass) {
    for (std::size_t e = 0; e < n_emotions; ++e) {
      for (std::size_t block = 0; block < per_emotion; block += 5) {
        std::vector<std::string> words;
        for (std::size_t i = block; i < block + 5; ++i)
          words.push_back(signal_word(e, i));
        // Hapax ride along on emotion-scrambled documents.
        while (next_hapax < n_hapax && rng() % 3 == 0)
          words.push_back("noise" + std::to_string(next_hapax++));
        out.train.documents.push_back(doc("t" + std::to_string(doc_id++),
                                          words, pure_votes(n_emotions, e)));
      }
    }
  }
  while (next_hapax < n_hapax) {
    std::vector<std::string> words = {"noise" + std::to_string(next_hapax++)};
    out.train.documents.push_back(doc("t" + std::to_string(doc_id++), words,
                                      pure_votes(n_emotions, rng() % n_emotions)));
  }

  // Test: signal words of one emotion plus leaked train hapax.
  for (std::size_t d = 0; d < 120; ++d) {
    std::size_t e = d % n_emotions;
    std::vector<std::string> words;
    for (std::size_t i = 0; i < 4; ++i)
      words.push_back(signal_word(e, rng() % per_emotion));
    for (std::size_t i = 0; i < 3 && n_hapax > 0; ++i)
      words.push_back("noise" + std::to_string(rng() % n_hapax));
    out.test.documents.push_back(
        doc("q" + std::to_string(d), words, pure_votes(n_emotions, e)));
  }
  return out;
}

NoisyCorpus scrambled_corpus(std::uint64_t seed, std::size_t n_signal,
                             std::size_t n_scrambled) {
  std::mt19937_64 rng(seed);
  EmotionSpace space = space4();
  std::size_t n_emotions = space.size();
  std::size_t per_emotion = n_signal / n_emotions;

  auto signal_word = [&](std::size_t e, std::size_t i) {
    return "sig" + std::to_string(e) + "x" + std::to_string(i % per_emotion);
  };
  auto scram_word = [&](std::size_t k) {
    return "scram" + std::to_string(k % n_scrambled);
  };

  NoisyCorpus out;
  out.train.space = space;
  out.test.space = space;

  std::size_t doc_id = 0;
  for (std::size_t pass = 0; pass < 12; ++pass) {
    for (std::size_t e = 0; e < n_emotions; ++e) {
      for (std::size_t block = 0; block < per_emotion; block += 5) {
        std::vector<std::string> words;
        for (std::size_t i = block; i < block + 5; ++i)
          words.push_back(signal_word(e, i));
        // Rare leak of a scrambled word into a tagged document: enough to
        // give it a (noisy) row when untagged documents stay in.
        if (rng() % 6 == 0) words.push_back(scram_word(rng()));
        out.train.documents.push_back(doc("t" + std::to_string(doc_id++),
                                          words, pure_votes(n_emotions, e)));
      }
    }
  }

  // A fifth of the corpus: zero-vote documents stuffed with scrambled words,
  // pushing them over the frequency cutoff when filtering is off.
  std::size_t tagged = out.train.documents.size();
  std::size_t untagged = tagged / 4;  // 20% of the final corpus
  for (std::size_t d = 0; d < untagged; ++d) {
    std::vector<std::string> words;
    for (std::size_t i = 0; i < 14; ++i) words.push_back(scram_word(rng()));
    out.train.documents.push_back(
        doc("z" + std::to_string(d), words,
            std::vector<long long>(n_emotions, 0)));
  }

  for (std::size_t d = 0; d < 120; ++d) {
    std::size_t e = d % n_emotions;
    std::vector<std::string> words;
    for (std::size_t i = 0; i < 4; ++i)
      words.push_back(signal_word(e, rng() % per_emotion));
    for (std::size_t i = 0; i < 3; ++i) words.push_back(scram_word(rng()));
    out.test.documents.push_back(
        doc("q" + std::to_string(d), words, pure_votes(n_emotions, e)));
  }
  return out;
}

std::pair<Lexicon, Corpus> linear_identity_fixture(std::uint64_t seed,
                                                   std::size_t n_docs) {
  std::vector<Profile> profiles = {
      {"a", {8, 4, 3, 1}},  {"b", {1, 1, 7, 7}},  {"c", {2, 12, 1, 1}},
      {"d", {5, 5, 5, 1}},  {"e", {1, 2, 3, 10}}, {"f", {6, 2, 6, 2}},
      {"g", {13, 1, 1, 1}}, {"h", {1, 6, 8, 1}},  {"i", {3, 3, 4, 6}},
      {"j", {0, 9, 2, 5}},  {"k", {7, 0, 9, 0}},  {"l", {2, 5, 0, 9}}};
  Lexicon lex = hand_lexicon(space4(), profiles);

  std::mt19937_64 rng(seed);
  std::vector<std::vector<std::string>> docs;
  for (std::size_t i = 0; i < n_docs; ++i) {
    std::size_t len = 2 + rng() % 5;
    std::vector<std::string> words;
    for (std::size_t j = 0; j < len; ++j)
      words.push_back(profiles[rng() % profiles.size()].first);
    docs.push_back(std::move(words));
  }
  return {std::move(lex), identity_corpus(space4(), profiles, docs)};
}

NoisyCorpus curve_corpus(std::uint64_t seed, std::size_t n_docs) {
  std::mt19937_64 rng(seed);
  EmotionSpace space = space4();
  std::size_t n_emotions = space.size();
  constexpr std::size_t kPerEmotion = 10;

  auto signal_word = [&](std::size_t e, std::size_t i) {
    return "sig" + std::to_string(e) + "x" + std::to_string(i % kPerEmotion);
  };

  NoisyCorpus out;
  out.train.space = space;
  out.test.space = space;

  // Vote noise dilutes as more documents accumulate per word, so lexicon
  // rows converge to the words' true emotions with corpus size.
  for (std::size_t d = 0; d < n_docs; ++d) {
    std::vector<std::string> words;
    std::vector<long long> votes(n_emotions, 0);
    for (int j = 0; j < 3; ++j) {
      std::size_t e = rng() % n_emotions;
      words.push_back(signal_word(e, rng() % kPerEmotion));
      votes[e] += 4;
    }
    votes[rng() % n_emotions] += 5;  // contamination
    out.train.documents.push_back(
        doc("t" + std::to_string(d), words, std::move(votes)));
  }

  for (std::size_t d = 0; d < 200; ++d) {
    std::vector<std::string> words;
    std::vector<long long> votes(n_emotions, 0);
    for (int j = 0; j < 3; ++j) {
      std::size_t e = rng() % n_emotions;
      words.push_back(signal_word(e, rng() % kPerEmotion));
      votes[e] += 4;
    }
    out.test.documents.push_back(
        doc("q" + std::to_string(d), words, std::move(votes)));
  }
  return out;
}

ClusterWorld cluster_world(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  constexpr std::size_t kClusters = 24;
  constexpr std::size_t kPerCluster = 8;

  const std::vector<std::vector<int>> cluster_profiles = {
      {10, 2, 2, 2}, {2, 10, 2, 2}, {2, 2, 10, 2}, {2, 2, 2, 10},
      {8, 4, 2, 2},  {2, 8, 4, 2},  {2, 2, 8, 4},  {4, 2, 2, 8}};

  ClusterWorld world;
  world.model.dimension = kClusters;

  std::vector<Profile> profiles;
  for (std::size_t c = 0; c < kClusters; ++c) {
    for (std::size_t i = 0; i < kPerCluster; ++i) {
      std::string word = "c" + std::to_string(c) + "w" + std::to_string(i);
      profiles.push_back({word, cluster_profiles[c % cluster_profiles.size()]});
      // Cluster axis plus a small per-word wobble.
      std::vector<double> v(kClusters, 0.0);
      v[c] = 1.0;
      v[(c + 1) % kClusters] = 0.01 * static_cast<double>(i + 1);
      world.model.vectors.emplace(std::move(word), std::move(v));
    }
  }
  world.lexicon = hand_lexicon(space4(), profiles);

  std::vector<std::vector<std::string>> docs;
  for (int d = 0; d < 160; ++d) {
    std::vector<std::string> words;
    for (int j = 0; j < 4; ++j) {
      std::size_t c = rng() % kClusters;
      std::size_t i = rng() % kPerCluster;
      words.push_back("c" + std::to_string(c) + "w" + std::to_string(i));
    }
    docs.push_back(std::move(words));
  }
  world.test = identity_corpus(space4(), profiles, docs);
  return world;
}

const char* published_excerpt_tsv() {
  return
      "term\tafraid\tamused\tangry\tannoyed\tdont_care\thappy\tinspired\tsad\n"
      "awe\t0.04\t0.18\t0.04\t0.12\t0.14\t0.12\t0.32\t0.04\n"
      "criminal\t0.08\t0.11\t0.27\t0.16\t0.11\t0.09\t0.07\t0.10\n"
      "dead\t0.17\t0.07\t0.18\t0.08\t0.07\t0.05\t0.08\t0.29\n"
      "funny\t0.04\t0.31\t0.04\t0.13\t0.17\t0.09\t0.16\t0.06\n"
      "warning\t0.30\t0.07\t0.13\t0.12\t0.08\t0.07\t0.06\t0.16\n"
      "rapist\t0.09\t0.08\t0.37\t0.08\t0.18\t0.08\t0.06\t0.07\n"
      "virtuosity\t0.00\t0.24\t0.00\t0.01\t0.00\t0.41\t0.33\t0.01\n";
}

TempDir::TempDir() {
  auto base = std::filesystem::temp_directory_path();
  std::mt19937_64 rng(std::random_device{}());
  for (int attempt = 0; attempt < 64; ++attempt) {
    auto candidate = base / ("moodlex_test_" + std::to_string(rng()));
    std::error_code ec;
    if (std::filesystem::create_directory(candidate, ec)) {
      path_ = candidate;
      return;
    }
  }
  throw std::runtime_error("cannot create temp directory");
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace fixtures
