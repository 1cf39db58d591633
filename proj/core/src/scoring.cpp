#include "moodlex/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "moodlex/util.hpp"

namespace moodlex {

using json = nlohmann::ordered_json;

ScoredText score_text(const Lexicon& lexicon,
                      const std::vector<std::string>& terms) {
  ScoredText out;
  out.total = terms.size();
  EmotionVector sum(lexicon.space.size(), 0.0);
  for (const auto& term : terms) {
    if (const EmotionVector* vec = lexicon.lookup(term)) {
      for (std::size_t e = 0; e < sum.size(); ++e) sum[e] += (*vec)[e];
      ++out.covered;
    }
  }
  if (out.covered == 0) return out;
  for (double& v : sum) v /= static_cast<double>(out.covered);
  out.scores = std::move(sum);
  return out;
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size())
    throw InputError("pearson: series lengths differ");
  if (xs.size() < 2) throw InputError("pearson: need at least 2 points");

  double n = static_cast<double>(xs.size());
  double mean_x = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  double mean_y = std::accumulate(ys.begin(), ys.end(), 0.0) / n;

  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double dx = xs[i] - mean_x;
    double dy = ys[i] - mean_y;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0)
    throw ComputeError("undefined correlation: constant series");
  // Rounding can push perfectly collinear series a few ulp past 1.
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

namespace {

void append_config(std::ostringstream& out,
                   const std::map<std::string, std::string>& config) {
  for (const auto& [key, value] : config)
    out << "# " << key << '\t' << value << '\n';
}

json config_json(const std::map<std::string, std::string>& config) {
  json j = json::object();
  for (const auto& [key, value] : config) j[key] = value;
  return j;
}

// 6-decimal rounding so serialized numbers match the TSV rendering.
double round6(double v) { return std::round(v * 1e6) / 1e6; }

}  // namespace

std::string report_to_tsv(const EvalReport& report) {
  std::ostringstream out;
  append_config(out, report.config);
  out << "# documents_total\t" << report.documents_total << '\n';
  out << "# documents_used\t" << report.documents_used << '\n';
  out << "# excluded_zero_coverage\t" << report.excluded_zero_coverage << '\n';
  out << "# excluded_zero_votes\t" << report.excluded_zero_votes << '\n';
  out << "# mean_coverage\t" << fmt_fixed(report.mean_coverage) << '\n';
  out << "emotion\tpearson_r\n";
  for (const auto& ec : report.per_emotion) {
    out << ec.label << '\t';
    if (ec.r) {
      out << fmt_fixed(*ec.r);
    } else {
      out << "undefined\t" << ec.note;
    }
    out << '\n';
  }
  out << "average\t"
      << (report.average ? fmt_fixed(*report.average) : "undefined") << '\n';
  return out.str();
}

std::string report_to_jsonl(const EvalReport& report) {
  json j;
  j["config"] = config_json(report.config);
  j["documents_total"] = report.documents_total;
  j["documents_used"] = report.documents_used;
  j["excluded_zero_coverage"] = report.excluded_zero_coverage;
  j["excluded_zero_votes"] = report.excluded_zero_votes;
  j["mean_coverage"] = round6(report.mean_coverage);
  json per = json::object();
  for (const auto& ec : report.per_emotion) {
    if (ec.r) {
      per[ec.label] = round6(*ec.r);
    } else {
      per[ec.label] = nullptr;
    }
  }
  j["pearson_r"] = std::move(per);
  if (report.average) {
    j["average"] = round6(*report.average);
  } else {
    j["average"] = nullptr;
  }
  return j.dump() + "\n";
}

EvalReport evaluate(const Lexicon& lexicon, const Corpus& test, WordRep rep,
                    int threads) {
  if (!(lexicon.space == test.space))
    throw InputError("lexicon and test corpus emotion spaces differ");

  std::size_t n = test.documents.size();
  std::vector<std::optional<EmotionVector>> predicted(n);
  std::vector<std::optional<EmotionVector>> gold(n);
  std::vector<double> coverage(n, -1.0);

  parallel_for(n, threads, [&](std::size_t d) {
    const auto& doc = test.documents[d];
    auto terms = term_stream(doc, rep);
    ScoredText scored = score_text(lexicon, terms);
    predicted[d] = scored.scores;
    gold[d] = vote_percentages(doc, test.space);
    if (scored.total > 0)
      coverage[d] = static_cast<double>(scored.covered) /
                    static_cast<double>(scored.total);
  });

  EvalReport report;
  report.documents_total = n;

  std::vector<std::size_t> usable;
  for (std::size_t d = 0; d < n; ++d) {
    if (!predicted[d]) ++report.excluded_zero_coverage;
    if (!gold[d]) ++report.excluded_zero_votes;
    if (predicted[d] && gold[d]) usable.push_back(d);
  }
  report.documents_used = usable.size();
  if (usable.size() < 2)
    throw ComputeError("fewer than 2 usable documents (" +
                       std::to_string(usable.size()) + " of " +
                       std::to_string(n) + ")");

  double cov_sum = 0.0;
  std::size_t cov_n = 0;
  for (std::size_t d = 0; d < n; ++d) {
    if (coverage[d] >= 0.0) {
      cov_sum += coverage[d];
      ++cov_n;
    }
  }
  report.mean_coverage = cov_n > 0 ? cov_sum / static_cast<double>(cov_n) : 0.0;

  double r_sum = 0.0;
  std::size_t r_n = 0;
  for (std::size_t e = 0; e < lexicon.space.size(); ++e) {
    EmotionCorrelation ec;
    ec.label = lexicon.space.label(e);
    std::vector<double> xs, ys;
    xs.reserve(usable.size());
    ys.reserve(usable.size());
    for (std::size_t d : usable) {
      xs.push_back((*predicted[d])[e]);
      ys.push_back((*gold[d])[e]);
    }
    try {
      ec.r = pearson(xs, ys);
      r_sum += *ec.r;
      ++r_n;
    } catch (const ComputeError& e2) {
      ec.note = e2.what();
    }
    report.per_emotion.push_back(std::move(ec));
  }
  if (r_n > 0) report.average = r_sum / static_cast<double>(r_n);
  return report;
}

CoverageStats coverage_stats(const Lexicon& lexicon, const Corpus& test,
                             WordRep rep) {
  CoverageStats stats;
  double sum = 0.0;
  for (const auto& doc : test.documents) {
    auto terms = term_stream(doc, rep);
    if (terms.empty()) continue;
    std::size_t covered = 0;
    for (const auto& term : terms)
      if (lexicon.lookup(term)) ++covered;
    double ratio =
        static_cast<double>(covered) / static_cast<double>(terms.size());
    stats.per_document.emplace_back(doc.id, ratio);
    sum += ratio;
  }
  if (!stats.per_document.empty())
    stats.mean = sum / static_cast<double>(stats.per_document.size());
  return stats;
}

std::vector<CurvePoint> learning_curve(const Corpus& corpus,
                                       const Corpus& test, WordRep rep,
                                       const std::vector<std::size_t>& sizes,
                                       long long cutoff, std::uint64_t seed,
                                       int threads) {
  if (sizes.empty()) throw InputError("learning curve needs at least one size");
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] > corpus.documents.size())
      throw InputError("size " + std::to_string(sizes[i]) +
                       " exceeds corpus (" +
                       std::to_string(corpus.documents.size()) + ")");
    if (i > 0 && sizes[i] < sizes[i - 1])
      throw InputError("sizes must be ascending");
  }

  // One seeded permutation; prefixes give nested subsets.
  std::vector<std::size_t> order(corpus.documents.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return corpus.documents[a].id < corpus.documents[b].id;
  });
  seeded_shuffle(order, seed);

  std::vector<CurvePoint> points;
  for (std::size_t size : sizes) {
    std::vector<std::size_t> subset(order.begin(), order.begin() + size);
    std::sort(subset.begin(), subset.end());  // keep original document order
    Corpus sub;
    sub.space = corpus.space;
    for (std::size_t d : subset) sub.documents.push_back(corpus.documents[d]);

    Lexicon lex = build_lexicon(sub, rep, cutoff, /*filter=*/false, threads);
    EvalReport report = evaluate(lex, test, rep, threads);
    if (!report.average)
      throw ComputeError("learning curve: correlation undefined at size " +
                         std::to_string(size));
    points.push_back({size, *report.average});
  }
  return points;
}

std::vector<SweepCell> sweep(const Corpus& corpus, const Corpus& test,
                             const std::vector<WordRep>& reps,
                             const std::vector<long long>& cutoffs,
                             const std::vector<bool>& filter_flags,
                             int threads) {
  if (reps.empty() || cutoffs.empty() || filter_flags.empty())
    throw InputError("sweep needs at least one rep, cutoff and filter flag");
  std::vector<SweepCell> grid;
  for (WordRep rep : reps) {
    for (long long cutoff : cutoffs) {
      for (bool filtered : filter_flags) {
        Lexicon lex = build_lexicon(corpus, rep, cutoff, filtered, threads);
        SweepCell cell{rep, cutoff, filtered, lex.size(),
                       evaluate(lex, test, rep, threads)};
        grid.push_back(std::move(cell));
      }
    }
  }
  return grid;
}

}  // namespace moodlex
