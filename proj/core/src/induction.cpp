#include "moodlex/induction.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "moodlex/util.hpp"

namespace moodlex {

using json = nlohmann::ordered_json;

void SparseMatrix::push(std::size_t row, std::size_t col, double value) {
  if (row >= n_rows_ || col >= n_cols_)
    throw InputError("sparse index out of range");
  if (value == 0.0) return;
  auto& r = rows_[row];
  if (!r.empty() && r.back().col >= col)
    throw InputError("sparse columns must be pushed in ascending order");
  r.push_back({col, value});
}

std::size_t SparseMatrix::nnz() const {
  std::size_t total = 0;
  for (const auto& r : rows_) total += r.size();
  return total;
}

const EmotionVector* Lexicon::lookup(const std::string& term) const {
  auto it = entries.find(term);
  return it == entries.end() ? nullptr : &it->second;
}

SparseMatrix build_mde(const Corpus& corpus) {
  SparseMatrix mde(corpus.documents.size(), corpus.space.size());
  for (std::size_t d = 0; d < corpus.documents.size(); ++d) {
    auto pct = vote_percentages(corpus.documents[d], corpus.space);
    if (!pct) continue;  // zero-vote document: all-zero row
    for (std::size_t e = 0; e < pct->size(); ++e) mde.push(d, e, (*pct)[e]);
  }
  return mde;
}

SparseMatrix build_mwd(const Corpus& corpus, const Vocabulary& vocab) {
  std::size_t n_docs = corpus.documents.size();
  SparseMatrix mwd(vocab.size(), n_docs);
  // Documents are processed in ascending order, so row columns stay sorted.
  std::map<std::size_t, long long> doc_counts;
  for (std::size_t d = 0; d < n_docs; ++d) {
    doc_counts.clear();
    long long total = 0;
    for (const auto& term : term_stream(corpus.documents[d], vocab.rep())) {
      if (auto idx = vocab.index_of(term)) {
        doc_counts[*idx] += 1;
        ++total;
      }
    }
    if (total == 0) continue;  // no in-vocabulary terms: all-zero column
    for (const auto& [w, count] : doc_counts)
      mwd.push(w, d, static_cast<double>(count) / static_cast<double>(total));
  }
  return mwd;
}

std::vector<EmotionVector> multiply_we(const SparseMatrix& mwd,
                                       const SparseMatrix& mde, int threads) {
  if (mwd.n_cols() != mde.n_rows())
    throw InputError("dimension mismatch: M_WD has " +
                     std::to_string(mwd.n_cols()) + " documents, M_DE has " +
                     std::to_string(mde.n_rows()));

  std::size_t n_emotions = mde.n_cols();
  std::vector<EmotionVector> raw(mwd.n_rows(), EmotionVector(n_emotions, 0.0));
  parallel_for(mwd.n_rows(), threads, [&](std::size_t w) {
    auto& acc = raw[w];
    for (const auto& wd : mwd.row(w))  // ascending document order
      for (const auto& de : mde.row(wd.col))
        acc[de.col] += wd.value * de.value;
  });
  return raw;
}

std::vector<std::optional<EmotionVector>> normalize_we(
    const std::vector<EmotionVector>& raw) {
  std::vector<std::optional<EmotionVector>> out(raw.size());
  if (raw.empty()) return out;

  std::size_t n_emotions = raw.front().size();
  EmotionVector col_sums(n_emotions, 0.0);
  for (const auto& row : raw)
    for (std::size_t e = 0; e < n_emotions; ++e) col_sums[e] += row[e];

  for (std::size_t w = 0; w < raw.size(); ++w) {
    EmotionVector row(n_emotions, 0.0);
    double row_sum = 0.0;
    for (std::size_t e = 0; e < n_emotions; ++e) {
      row[e] = col_sums[e] > 0.0 ? raw[w][e] / col_sums[e] : 0.0;
      row_sum += row[e];
    }
    if (row_sum == 0.0) continue;  // no emotional mass: dropped
    for (double& v : row) v /= row_sum;
    out[w] = std::move(row);
  }
  return out;
}

Lexicon build_lexicon(const Corpus& corpus, WordRep rep, long long cutoff,
                      bool filter_untagged_docs, int threads) {
  const Corpus* working = &corpus;
  Corpus filtered;
  if (filter_untagged_docs) {
    filtered = filter_untagged(corpus);
    working = &filtered;
  }
  if (working->documents.empty())
    throw InputError(filter_untagged_docs ? "empty corpus after filtering"
                                          : "empty corpus");

  Vocabulary vocab = build_vocabulary(*working, rep, cutoff);
  if (vocab.size() == 0)
    throw InputError("empty vocabulary after cutoff " + std::to_string(cutoff));

  SparseMatrix mde = build_mde(*working);
  SparseMatrix mwd = build_mwd(*working, vocab);
  auto normalized = normalize_we(multiply_we(mwd, mde, threads));

  Lexicon lex;
  lex.space = corpus.space;
  lex.rep = rep;
  lex.cutoff = cutoff;
  lex.provenance.corpus_documents = working->documents.size();
  lex.provenance.documents_before_filter = corpus.documents.size();
  lex.provenance.filtered = filter_untagged_docs;
  for (std::size_t w = 0; w < normalized.size(); ++w) {
    if (normalized[w]) {
      lex.entries.emplace(vocab.term(w), std::move(*normalized[w]));
    } else {
      lex.provenance.dropped_terms.push_back(vocab.term(w));
    }
  }
  return lex;
}

void save_lexicon(const Lexicon& lexicon, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());

  out << "term";
  for (const auto& label : lexicon.space.labels()) out << '\t' << label;
  out << '\n';
  for (const auto& [term, vec] : lexicon.entries) {
    out << term;
    for (double v : vec) out << '\t' << fmt_fixed(v);
    out << '\n';
  }

  json meta;
  meta["format"] = "moodlex-lexicon";
  meta["labels"] = lexicon.space.labels();
  meta["rep"] = to_string(lexicon.rep);
  meta["cutoff"] = lexicon.cutoff;
  meta["filtered"] = lexicon.provenance.filtered;
  meta["seed"] = lexicon.provenance.seed;
  meta["corpus_documents"] = lexicon.provenance.corpus_documents;
  meta["documents_before_filter"] = lexicon.provenance.documents_before_filter;
  meta["entries"] = lexicon.entries.size();
  meta["expanded_terms"] = lexicon.provenance.expanded_terms;
  meta["dropped_terms"] = lexicon.provenance.dropped_terms;

  std::ofstream meta_out(path.string() + ".meta.json");
  if (!meta_out) throw InputError("cannot write " + path.string() + ".meta.json");
  meta_out << meta.dump(2) << '\n';
}

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
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

}  // namespace

Lexicon load_lexicon(const std::filesystem::path& path,
                     double row_sum_tolerance) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());

  auto fail = [&](std::size_t line, const std::string& what) {
    throw InputError(path.string() + ":" + std::to_string(line) + ": " + what);
  };

  std::string text;
  std::size_t line_no = 0;

  // Header: first cell is a term-column caption ("term", "word", often empty
  // in published files); the rest are the emotion labels.
  std::vector<std::string> labels;
  while (std::getline(in, text)) {
    ++line_no;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (text.empty()) continue;
    auto fields = split_tabs(text);
    if (fields.size() < 3) fail(line_no, "header needs at least 2 label columns");
    labels.assign(fields.begin() + 1, fields.end());
    break;
  }
  if (labels.empty()) throw InputError(path.string() + ": empty lexicon file");

  Lexicon lex;
  lex.space = EmotionSpace(labels);

  while (std::getline(in, text)) {
    ++line_no;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (text.empty()) continue;
    auto fields = split_tabs(text);
    if (fields.size() != labels.size() + 1)
      fail(line_no, "expected " + std::to_string(labels.size() + 1) +
                        " columns, got " + std::to_string(fields.size()));
    if (fields[0].empty()) fail(line_no, "empty term");

    EmotionVector vec(labels.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      try {
        std::size_t used = 0;
        vec[i] = std::stod(fields[i + 1], &used);
        if (used != fields[i + 1].size()) throw std::invalid_argument("");
      } catch (const std::exception&) {
        fail(line_no, "non-numeric score '" + fields[i + 1] + "'");
      }
      if (vec[i] < 0.0) fail(line_no, "negative score");
      if (vec[i] > 1.0 + row_sum_tolerance) fail(line_no, "score above 1");
      sum += vec[i];
    }
    if (std::abs(sum - 1.0) > row_sum_tolerance)
      fail(line_no, "row sums to " + fmt_fixed(sum) + ", expected 1 within " +
                        fmt_fixed(row_sum_tolerance));
    if (!lex.entries.emplace(fields[0], std::move(vec)).second)
      fail(line_no, "duplicate term '" + fields[0] + "'");
  }

  // Sidecar restores build metadata when present.
  std::ifstream meta_in(path.string() + ".meta.json");
  if (meta_in) {
    json meta = json::parse(meta_in, nullptr, /*allow_exceptions=*/false);
    if (meta.is_object()) {
      if (meta.contains("rep") && meta["rep"].is_string())
        lex.rep = word_rep_from_string(meta["rep"].get<std::string>());
      if (meta.contains("cutoff") && meta["cutoff"].is_number_integer())
        lex.cutoff = meta["cutoff"].get<long long>();
      if (meta.contains("filtered") && meta["filtered"].is_boolean())
        lex.provenance.filtered = meta["filtered"].get<bool>();
      if (meta.contains("seed") && meta["seed"].is_number_unsigned())
        lex.provenance.seed = meta["seed"].get<std::uint64_t>();
      if (meta.contains("corpus_documents") &&
          meta["corpus_documents"].is_number_unsigned())
        lex.provenance.corpus_documents =
            meta["corpus_documents"].get<std::size_t>();
      if (meta.contains("documents_before_filter") &&
          meta["documents_before_filter"].is_number_unsigned())
        lex.provenance.documents_before_filter =
            meta["documents_before_filter"].get<std::size_t>();
      if (meta.contains("expanded_terms") &&
          meta["expanded_terms"].is_number_unsigned())
        lex.provenance.expanded_terms =
            meta["expanded_terms"].get<std::size_t>();
      if (meta.contains("dropped_terms") && meta["dropped_terms"].is_array())
        for (const auto& t : meta["dropped_terms"])
          if (t.is_string())
            lex.provenance.dropped_terms.push_back(t.get<std::string>());
    }
  }
  return lex;
}

}  // namespace moodlex
