#include "moodlex/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "moodlex/util.hpp"

namespace moodlex {

using json = nlohmann::ordered_json;

EmotionSpace::EmotionSpace(std::vector<std::string> labels)
    : labels_(std::move(labels)) {
  if (labels_.empty()) throw InputError("empty label set");
  if (labels_.size() < 2)
    throw InputError("an emotion space needs at least 2 labels");
  std::unordered_set<std::string> seen;
  for (const auto& l : labels_) {
    if (l.empty()) throw InputError("empty emotion label");
    if (!seen.insert(l).second)
      throw InputError("duplicate emotion label '" + l + "'");
  }
}

std::optional<std::size_t> EmotionSpace::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return i;
  return std::nullopt;
}

namespace {

[[noreturn]] void fail_line(const std::filesystem::path& path, std::size_t line,
                            const std::string& what) {
  throw InputError(path.string() + ":" + std::to_string(line) + ": " + what);
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  return in;
}

void check_new_id(std::unordered_set<std::string>& ids, const std::string& id,
                  const std::filesystem::path& path, std::size_t line) {
  if (id.empty()) fail_line(path, line, "empty document id");
  if (!ids.insert(id).second)
    fail_line(path, line, "duplicate id '" + id + "'");
}

std::vector<long long> parse_vote_object(const json& votes,
                                         const EmotionSpace& space,
                                         const std::filesystem::path& path,
                                         std::size_t line) {
  std::vector<long long> counts(space.size(), 0);
  for (const auto& [label, value] : votes.items()) {
    auto idx = space.index_of(label);
    if (!idx) fail_line(path, line, "unknown label '" + label + "'");
    if (!value.is_number_integer() || value.get<long long>() < 0)
      fail_line(path, line,
                "vote count for '" + label + "' must be a non-negative integer");
    counts[*idx] = value.get<long long>();
  }
  return counts;
}

Corpus load_jsonl(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  std::string text;
  std::size_t line_no = 0;

  Corpus corpus;
  bool have_header = false;
  std::unordered_set<std::string> ids;

  while (std::getline(in, text)) {
    ++line_no;
    if (text.empty()) continue;
    json record;
    try {
      record = json::parse(text);
    } catch (const json::parse_error& e) {
      fail_line(path, line_no, std::string("malformed record: ") + e.what());
    }
    if (!record.is_object()) fail_line(path, line_no, "record is not an object");

    if (!have_header) {
      if (!record.contains("labels") || !record["labels"].is_array())
        fail_line(path, line_no, "header must declare a 'labels' array");
      std::vector<std::string> labels;
      for (const auto& l : record["labels"]) {
        if (!l.is_string()) fail_line(path, line_no, "labels must be strings");
        labels.push_back(l.get<std::string>());
      }
      try {
        corpus.space = EmotionSpace(std::move(labels));
      } catch (const InputError& e) {
        fail_line(path, line_no, e.what());
      }
      have_header = true;
      continue;
    }

    RawDocument doc;
    if (!record.contains("id") || !record["id"].is_string())
      fail_line(path, line_no, "record needs a string 'id'");
    doc.id = record["id"].get<std::string>();
    check_new_id(ids, doc.id, path, line_no);

    if (record.contains("tokens")) {
      if (!record["tokens"].is_array())
        fail_line(path, line_no, "'tokens' must be an array");
      for (const auto& t : record["tokens"]) {
        if (!t.is_object() || !t.contains("t") || !t["t"].is_string())
          fail_line(path, line_no, "token needs a string 't' field");
        AnnotatedToken tok;
        tok.surface = t["t"].get<std::string>();
        if (t.contains("l")) {
          if (!t["l"].is_string()) fail_line(path, line_no, "'l' must be a string");
          tok.lemma = t["l"].get<std::string>();
        }
        if (t.contains("p")) {
          if (!t["p"].is_string()) fail_line(path, line_no, "'p' must be a string");
          tok.pos = t["p"].get<std::string>();
        }
        doc.tokens.push_back(std::move(tok));
      }
    }

    if (!record.contains("votes") || !record["votes"].is_object())
      fail_line(path, line_no, "record needs a 'votes' object");
    doc.votes = parse_vote_object(record["votes"], corpus.space, path, line_no);
    corpus.documents.push_back(std::move(doc));
  }

  if (!have_header)
    throw InputError(path.string() + ": missing header record with labels");
  return corpus;
}

std::vector<std::string> split_tab(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find('\t', start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

std::vector<std::string> split_comma(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t pos = s.find(',', start);
    if (pos == std::string::npos) {
      out.push_back(s.substr(start));
      break;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

Corpus load_tsv(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  std::string text;
  std::size_t line_no = 0;

  Corpus corpus;
  bool have_header = false;
  std::unordered_set<std::string> ids;

  while (std::getline(in, text)) {
    ++line_no;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (text.empty()) continue;

    if (!have_header) {
      auto fields = split_tab(text);
      if (fields.size() != 2 || fields[0] != "#labels")
        fail_line(path, line_no, "expected header '#labels<TAB>a,b,...'");
      std::vector<std::string> labels = split_comma(fields[1]);
      try {
        corpus.space = EmotionSpace(std::move(labels));
      } catch (const InputError& e) {
        fail_line(path, line_no, e.what());
      }
      have_header = true;
      continue;
    }

    auto fields = split_tab(text);
    // The votes field may be empty or missing entirely (editors strip the
    // trailing tab); both mean an untagged document.
    if (fields.size() != 3 && fields.size() != 2)
      fail_line(path, line_no, "expected 'id<TAB>text<TAB>votes'");

    RawDocument doc;
    doc.id = fields[0];
    check_new_id(ids, doc.id, path, line_no);

    std::istringstream words(fields[1]);
    std::string w;
    while (words >> w) doc.tokens.push_back(AnnotatedToken{w, {}, {}});

    doc.votes.assign(corpus.space.size(), 0);
    if (fields.size() == 3 && !fields[2].empty()) {
      for (const auto& pair : split_comma(fields[2])) {
        std::size_t colon = pair.rfind(':');
        if (colon == std::string::npos || colon == 0)
          fail_line(path, line_no, "malformed vote pair '" + pair + "'");
        std::string label = pair.substr(0, colon);
        auto idx = corpus.space.index_of(label);
        if (!idx) fail_line(path, line_no, "unknown label '" + label + "'");
        long long count = 0;
        try {
          std::size_t used = 0;
          count = std::stoll(pair.substr(colon + 1), &used);
          if (used != pair.size() - colon - 1) throw std::invalid_argument("");
        } catch (const std::exception&) {
          fail_line(path, line_no, "malformed vote count in '" + pair + "'");
        }
        if (count < 0) fail_line(path, line_no, "negative vote count");
        doc.votes[*idx] = count;
      }
    }
    corpus.documents.push_back(std::move(doc));
  }

  if (!have_header)
    throw InputError(path.string() + ": missing '#labels' header line");
  return corpus;
}

}  // namespace

CorpusFormat corpus_format_from_string(std::string_view name,
                                       const std::filesystem::path& path) {
  if (name == "jsonl") return CorpusFormat::Jsonl;
  if (name == "tsv") return CorpusFormat::Tsv;
  if (name == "auto")
    return path.extension() == ".tsv" ? CorpusFormat::Tsv : CorpusFormat::Jsonl;
  throw InputError("unknown corpus format '" + std::string(name) + "'");
}

Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format) {
  return format == CorpusFormat::Jsonl ? load_jsonl(path) : load_tsv(path);
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());

  json header;
  header["labels"] = corpus.space.labels();
  out << header.dump() << '\n';

  for (const auto& doc : corpus.documents) {
    json record;
    record["id"] = doc.id;
    record["tokens"] = json::array();
    for (const auto& tok : doc.tokens) {
      json t;
      t["t"] = tok.surface;
      if (tok.lemma) t["l"] = *tok.lemma;
      if (tok.pos) t["p"] = *tok.pos;
      record["tokens"].push_back(std::move(t));
    }
    json votes = json::object();
    for (std::size_t i = 0; i < doc.votes.size(); ++i)
      if (doc.votes[i] != 0) votes[corpus.space.label(i)] = doc.votes[i];
    record["votes"] = std::move(votes);
    out << record.dump() << '\n';
  }
}

Corpus filter_untagged(const Corpus& corpus) {
  Corpus out;
  out.space = corpus.space;
  for (const auto& doc : corpus.documents)
    if (doc.total_votes() > 0) out.documents.push_back(doc);
  return out;
}

std::optional<EmotionVector> vote_percentages(const RawDocument& doc,
                                              const EmotionSpace& space) {
  if (doc.votes.size() != space.size())
    throw InputError("document '" + doc.id +
                     "' votes do not match the emotion space");
  long long total = doc.total_votes();
  if (total == 0) return std::nullopt;
  EmotionVector out(space.size());
  for (std::size_t i = 0; i < space.size(); ++i)
    out[i] = static_cast<double>(doc.votes[i]) / static_cast<double>(total);
  return out;
}

std::optional<std::size_t> dominant_emotion(const RawDocument& doc) {
  if (doc.total_votes() == 0) return std::nullopt;
  std::size_t best = 0;
  for (std::size_t i = 1; i < doc.votes.size(); ++i)
    if (doc.votes[i] > doc.votes[best]) best = i;
  return best;
}

std::pair<Corpus, Corpus> split_holdout(const Corpus& corpus,
                                        double holdout_fraction,
                                        std::uint64_t seed) {
  if (!(holdout_fraction > 0.0 && holdout_fraction < 1.0))
    throw InputError("holdout fraction must be in (0, 1)");
  std::size_t n = corpus.documents.size();
  if (n < 2) throw InputError("corpus needs at least 2 documents to split");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return corpus.documents[a].id < corpus.documents[b].id;
  });
  seeded_shuffle(order, seed);

  auto test_size = static_cast<std::size_t>(
      std::llround(holdout_fraction * static_cast<double>(n)));
  std::vector<bool> in_test(n, false);
  for (std::size_t i = 0; i < test_size; ++i) in_test[order[i]] = true;

  Corpus train, test;
  train.space = corpus.space;
  test.space = corpus.space;
  for (std::size_t i = 0; i < n; ++i)
    (in_test[i] ? test : train).documents.push_back(corpus.documents[i]);
  return {std::move(train), std::move(test)};
}

}  // namespace moodlex
