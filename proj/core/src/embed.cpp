#include "moodlex/embed.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "moodlex/scoring.hpp"
#include "moodlex/util.hpp"

namespace moodlex {

const std::vector<double>* EmbeddingModel::lookup(const std::string& term) const {
  auto it = vectors.find(term);
  return it == vectors.end() ? nullptr : &it->second;
}

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string field;
  while (in >> field) out.push_back(std::move(field));
  return out;
}

bool parse_size(const std::string& s, std::size_t& out) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(s, &used);
    if (used != s.size() || v < 0) return false;
    out = static_cast<std::size_t>(v);
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace

EmbeddingModel load_embeddings(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());

  auto fail = [&](std::size_t line, const std::string& what) {
    throw InputError(path.string() + ":" + std::to_string(line) + ": " + what);
  };

  EmbeddingModel model;
  std::string text;
  std::size_t line_no = 0;
  bool first_content_line = true;

  while (std::getline(in, text)) {
    ++line_no;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (text.empty()) continue;
    auto fields = split_ws(text);

    if (first_content_line) {
      first_content_line = false;
      // Optional "count dimension" header.
      std::size_t count = 0, dim = 0;
      if (fields.size() == 2 && parse_size(fields[0], count) &&
          parse_size(fields[1], dim)) {
        if (dim == 0) fail(line_no, "declared dimension must be positive");
        model.dimension = dim;
        continue;
      }
    }

    if (fields.size() < 2) fail(line_no, "expected a term and values");
    if (model.dimension == 0) model.dimension = fields.size() - 1;
    if (fields.size() - 1 != model.dimension)
      fail(line_no, "expected " + std::to_string(model.dimension) +
                        " values, got " + std::to_string(fields.size() - 1));

    std::vector<double> vec(model.dimension);
    double norm_sq = 0.0;
    for (std::size_t i = 0; i < model.dimension; ++i) {
      try {
        std::size_t used = 0;
        vec[i] = std::stod(fields[i + 1], &used);
        if (used != fields[i + 1].size()) throw std::invalid_argument("");
      } catch (const std::exception&) {
        fail(line_no, "unparsable value '" + fields[i + 1] + "'");
      }
      norm_sq += vec[i] * vec[i];
    }
    if (norm_sq == 0.0) {
      ++model.dropped_zero_norm;
      continue;
    }
    if (!model.vectors.emplace(fields[0], std::move(vec)).second)
      ++model.duplicates_ignored;  // keep the first occurrence
  }

  if (model.vectors.empty())
    throw InputError(path.string() + ": no usable embedding vectors");
  return model;
}

double cosine_distance(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size())
    throw InputError("cosine_distance: dimensions differ");
  double dot = 0.0, nu = 0.0, nv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    nu += u[i] * u[i];
    nv += v[i] * v[i];
  }
  if (nu == 0.0 || nv == 0.0)
    throw ComputeError("cosine_distance: zero-norm vector");
  return 1.0 - dot / (std::sqrt(nu) * std::sqrt(nv));
}

std::optional<ExpansionRecord> nearest_in_lexicon(const std::string& word,
                                                  const Lexicon& lexicon,
                                                  const EmbeddingModel& model) {
  const std::vector<double>* query = model.lookup(word);
  if (!query) return std::nullopt;

  std::optional<ExpansionRecord> best;
  // Entries iterate lexicographically; a strict '<' keeps the first
  // (lexicographically smallest) term on distance ties.
  for (const auto& [term, vec] : lexicon.entries) {
    (void)vec;
    const std::vector<double>* candidate = model.lookup(term);
    if (!candidate) continue;
    double d = cosine_distance(*query, *candidate);
    if (!best || d < best->distance) best = ExpansionRecord{word, term, d};
  }
  return best;
}

ExpansionResult expand_lexicon(const Lexicon& lexicon,
                               const EmbeddingModel& model,
                               const std::set<std::string>& targets,
                               int threads) {
  std::vector<std::string> oov;
  for (const auto& t : targets)
    if (!lexicon.entries.contains(t)) oov.push_back(t);

  std::vector<std::optional<ExpansionRecord>> found(oov.size());
  parallel_for(oov.size(), threads, [&](std::size_t i) {
    found[i] = nearest_in_lexicon(oov[i], lexicon, model);
  });

  ExpansionResult result;
  result.lexicon = lexicon;
  for (const auto& [term, vec] : lexicon.entries) {
    (void)vec;
    if (!model.lookup(term)) ++result.lexicon_terms_without_embedding;
  }
  for (std::size_t i = 0; i < oov.size(); ++i) {
    if (found[i]) {
      result.lexicon.entries.emplace(oov[i],
                                     *lexicon.lookup(found[i]->donor));
      result.records.push_back(*found[i]);
    } else {
      result.unresolved.push_back(oov[i]);
    }
  }
  result.lexicon.provenance.expanded_terms += result.records.size();
  return result;
}

std::string records_to_tsv(const ExpansionResult& result) {
  std::ostringstream out;
  out << "word\tdonor\tdistance\n";
  for (const auto& rec : result.records)
    out << rec.word << '\t' << rec.donor << '\t' << fmt_fixed(rec.distance)
        << '\n';
  for (const auto& word : result.unresolved)
    out << "# unresolved\t" << word << '\n';
  out << "# lexicon_terms_without_embedding\t"
      << result.lexicon_terms_without_embedding << '\n';
  return out.str();
}

std::vector<AblationPoint> ablation(const Lexicon& lexicon,
                                    const EmbeddingModel& model,
                                    const Corpus& test, WordRep rep,
                                    const std::vector<double>& keep_fractions,
                                    std::uint64_t seed, int threads) {
  if (keep_fractions.empty())
    throw InputError("ablation needs at least one keep fraction");
  for (double f : keep_fractions)
    if (!(f > 0.0 && f <= 1.0))
      throw InputError("keep fractions must be in (0, 1]");

  std::vector<std::string> order;
  order.reserve(lexicon.entries.size());
  for (const auto& [term, vec] : lexicon.entries) {
    (void)vec;
    order.push_back(term);
  }
  seeded_shuffle(order, seed);  // prefixes give nested kept sets

  std::vector<AblationPoint> points;
  for (double fraction : keep_fractions) {
    auto keep_n = static_cast<std::size_t>(
        std::llround(fraction * static_cast<double>(order.size())));
    if (keep_n == 0)
      throw ComputeError("keep fraction " + fmt_fixed(fraction) +
                         " empties the lexicon");

    Lexicon reduced;
    reduced.space = lexicon.space;
    reduced.rep = lexicon.rep;
    reduced.cutoff = lexicon.cutoff;
    reduced.provenance = lexicon.provenance;
    std::set<std::string> removed;
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (i < keep_n) {
        reduced.entries.emplace(order[i], *lexicon.lookup(order[i]));
      } else {
        removed.insert(order[i]);
      }
    }

    ExpansionResult expanded = expand_lexicon(reduced, model, removed, threads);

    EvalReport r_reduced = evaluate(reduced, test, rep, threads);
    EvalReport r_expanded = evaluate(expanded.lexicon, test, rep, threads);
    if (!r_reduced.average || !r_expanded.average)
      throw ComputeError("ablation: correlation undefined at fraction " +
                         fmt_fixed(fraction));
    points.push_back({fraction, *r_reduced.average, *r_expanded.average,
                      r_reduced.mean_coverage, r_expanded.mean_coverage});
  }
  return points;
}

}  // namespace moodlex
