#include "moodlex/regress.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

#include "moodlex/util.hpp"

namespace moodlex {

using json = nlohmann::ordered_json;

FeatureMatrix featurize(const Lexicon& lexicon, const Corpus& docs,
                        WordRep rep) {
  if (!(lexicon.space == docs.space))
    throw InputError("lexicon and corpus emotion spaces differ");

  FeatureMatrix out;
  for (const auto& doc : docs.documents) {
    ScoredText scored = score_text(lexicon, term_stream(doc, rep));
    auto gold = vote_percentages(doc, docs.space);
    if (!scored.scores || !gold) {
      out.skipped_ids.push_back(doc.id);
      continue;
    }
    out.rows.push_back(std::move(*scored.scores));
    out.targets.push_back(std::move(*gold));
    out.kept_ids.push_back(doc.id);
  }
  if (out.rows.empty()) throw ComputeError("no covered documents to featurize");
  return out;
}

namespace {

// Gaussian elimination with partial pivoting on the (N+1)-sized normal
// system. Relative pivot threshold flags rank deficiency.
std::vector<double> solve_normal(std::vector<std::vector<double>> a,
                                 std::vector<double> b) {
  std::size_t n = b.size();
  double scale = 0.0;
  for (const auto& row : a)
    for (double v : row) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) scale = 1.0;

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    if (std::abs(a[pivot][col]) <= 1e-12 * scale)
      throw ComputeError(
          "singular normal equations; use ridge > 0 to regularize");
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t r = col + 1; r < n; ++r) {
      double factor = a[r][col] / a[col][col];
      if (factor == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
      b[r] -= factor * b[col];
    }
  }

  std::vector<double> x(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double acc = b[i];
    for (std::size_t c = i + 1; c < n; ++c) acc -= a[i][c] * x[c];
    x[i] = acc / a[i][i];
  }
  return x;
}

}  // namespace

LinearModel fit_linear(const std::vector<std::vector<double>>& X,
                       std::span<const double> y, double ridge) {
  if (X.empty()) throw InputError("fit_linear: empty design matrix");
  if (X.size() != y.size())
    throw InputError("fit_linear: X and y row counts differ");
  if (ridge < 0.0) throw InputError("fit_linear: ridge must be >= 0");
  std::size_t n_features = X.front().size();
  for (const auto& row : X)
    if (row.size() != n_features)
      throw InputError("fit_linear: ragged design matrix");

  // Augmented system over [w, b]; the intercept is never penalized.
  std::size_t dim = n_features + 1;
  std::vector<std::vector<double>> a(dim, std::vector<double>(dim, 0.0));
  std::vector<double> rhs(dim, 0.0);
  for (std::size_t r = 0; r < X.size(); ++r) {
    for (std::size_t i = 0; i < n_features; ++i) {
      for (std::size_t j = i; j < n_features; ++j)
        a[i][j] += X[r][i] * X[r][j];
      a[i][n_features] += X[r][i];
      rhs[i] += X[r][i] * y[r];
    }
    rhs[n_features] += y[r];
  }
  a[n_features][n_features] = static_cast<double>(X.size());
  for (std::size_t i = 0; i < n_features; ++i) {
    a[i][i] += ridge;
    for (std::size_t j = i + 1; j < n_features; ++j) a[j][i] = a[i][j];
    a[n_features][i] = a[i][n_features];
  }

  std::vector<double> solution = solve_normal(std::move(a), std::move(rhs));
  LinearModel model;
  model.weights.assign(solution.begin(), solution.begin() + n_features);
  model.intercept = solution[n_features];
  model.ridge = ridge;
  for (double v : solution)
    if (!std::isfinite(v))
      throw ComputeError("non-finite regression solution; increase ridge");
  return model;
}

double predict_linear(const LinearModel& model, std::span<const double> row) {
  if (row.size() != model.weights.size())
    throw InputError("predict_linear: feature count mismatch");
  double acc = model.intercept;
  for (std::size_t i = 0; i < row.size(); ++i)
    acc += model.weights[i] * row[i];
  return acc;
}

FoldPlan FoldPlan::make(const std::vector<std::string>& ids, int k,
                        std::uint64_t seed) {
  if (k < 2) throw InputError("fold count must be >= 2");
  if (ids.size() < static_cast<std::size_t>(k))
    throw InputError("fewer documents than folds");

  std::vector<std::string> order = ids;
  std::sort(order.begin(), order.end());
  seeded_shuffle(order, seed);

  FoldPlan plan;
  plan.k = k;
  plan.seed = seed;
  plan.fold_sizes.assign(k, 0);
  for (std::size_t i = 0; i < order.size(); ++i) {
    int fold = static_cast<int>(i % static_cast<std::size_t>(k));
    plan.assignments[order[i]] = fold;
    ++plan.fold_sizes[fold];
  }
  return plan;
}

CvReport cross_validate_regression(const Lexicon& lexicon, const Corpus& docs,
                                   WordRep rep, int k, std::uint64_t seed,
                                   double ridge) {
  FeatureMatrix feat = featurize(lexicon, docs, rep);
  FoldPlan plan = FoldPlan::make(feat.kept_ids, k, seed);

  std::size_t n = feat.rows.size();
  std::size_t n_emotions = lexicon.space.size();
  std::vector<int> fold_of(n);
  for (std::size_t i = 0; i < n; ++i)
    fold_of[i] = plan.assignments.at(feat.kept_ids[i]);

  std::vector<std::vector<double>> pooled(n_emotions,
                                          std::vector<double>(n, 0.0));
  for (int fold = 0; fold < k; ++fold) {
    std::vector<std::vector<double>> train_x;
    std::vector<std::size_t> train_rows, test_rows;
    for (std::size_t i = 0; i < n; ++i)
      (fold_of[i] == fold ? test_rows : train_rows).push_back(i);
    if (test_rows.empty()) continue;
    if (train_rows.size() < 2)
      throw ComputeError("fold " + std::to_string(fold) +
                         " leaves fewer than 2 training documents");
    train_x.reserve(train_rows.size());
    for (std::size_t i : train_rows) train_x.push_back(feat.rows[i]);

    for (std::size_t e = 0; e < n_emotions; ++e) {
      std::vector<double> train_y;
      train_y.reserve(train_rows.size());
      for (std::size_t i : train_rows) train_y.push_back(feat.targets[i][e]);
      LinearModel model = fit_linear(train_x, train_y, ridge);
      for (std::size_t i : test_rows)
        pooled[e][i] = predict_linear(model, feat.rows[i]);
    }
  }

  CvReport report;
  report.k = k;
  report.seed = seed;
  report.ridge = ridge;
  report.fold_sizes = plan.fold_sizes;
  report.documents_used = n;
  report.documents_skipped = feat.skipped_ids.size();

  double r_sum = 0.0;
  std::size_t r_n = 0;
  for (std::size_t e = 0; e < n_emotions; ++e) {
    EmotionCorrelation ec;
    ec.label = lexicon.space.label(e);
    std::vector<double> ys;
    ys.reserve(n);
    for (std::size_t i = 0; i < n; ++i) ys.push_back(feat.targets[i][e]);
    try {
      ec.r = pearson(pooled[e], ys);
      r_sum += *ec.r;
      ++r_n;
    } catch (const ComputeError& err) {
      ec.note = err.what();
    }
    report.per_emotion.push_back(std::move(ec));
  }
  if (r_n > 0) report.average = r_sum / static_cast<double>(r_n);
  return report;
}

GaussianNBModel fit_gnb(const std::vector<std::vector<double>>& X,
                        const std::vector<std::string>& labels) {
  if (X.empty()) throw InputError("fit_gnb: empty training set");
  if (X.size() != labels.size())
    throw InputError("fit_gnb: X and label counts differ");
  std::size_t n_features = X.front().size();

  std::set<std::string> class_set(labels.begin(), labels.end());
  GaussianNBModel model;
  model.classes.assign(class_set.begin(), class_set.end());

  constexpr double kVarianceFloor = 1e-9;
  std::size_t n_classes = model.classes.size();
  model.priors.assign(n_classes, 0.0);
  model.means.assign(n_classes, std::vector<double>(n_features, 0.0));
  model.variances.assign(n_classes, std::vector<double>(n_features, 0.0));

  std::vector<std::size_t> counts(n_classes, 0);
  auto class_index = [&](const std::string& label) {
    return static_cast<std::size_t>(
        std::lower_bound(model.classes.begin(), model.classes.end(), label) -
        model.classes.begin());
  };

  for (std::size_t r = 0; r < X.size(); ++r) {
    std::size_t c = class_index(labels[r]);
    ++counts[c];
    for (std::size_t f = 0; f < n_features; ++f)
      model.means[c][f] += X[r][f];
  }
  for (std::size_t c = 0; c < n_classes; ++c) {
    for (double& m : model.means[c]) m /= static_cast<double>(counts[c]);
    model.priors[c] =
        static_cast<double>(counts[c]) / static_cast<double>(X.size());
  }
  for (std::size_t r = 0; r < X.size(); ++r) {
    std::size_t c = class_index(labels[r]);
    for (std::size_t f = 0; f < n_features; ++f) {
      double d = X[r][f] - model.means[c][f];
      model.variances[c][f] += d * d;
    }
  }
  for (std::size_t c = 0; c < n_classes; ++c)
    for (double& v : model.variances[c])
      v = std::max(v / static_cast<double>(counts[c]), kVarianceFloor);
  return model;
}

std::vector<double> gnb_posteriors(const GaussianNBModel& model,
                                   std::span<const double> row) {
  std::size_t n_classes = model.classes.size();
  if (n_classes == 0) throw InputError("gnb_posteriors: empty model");
  if (row.size() != model.means.front().size())
    throw InputError("gnb_posteriors: feature count mismatch");

  std::vector<double> log_p(n_classes);
  for (std::size_t c = 0; c < n_classes; ++c) {
    double acc = std::log(model.priors[c]);
    for (std::size_t f = 0; f < row.size(); ++f) {
      double var = model.variances[c][f];
      double d = row[f] - model.means[c][f];
      acc += -0.5 * std::log(2.0 * M_PI * var) - d * d / (2.0 * var);
    }
    log_p[c] = acc;
  }
  double max_log = *std::max_element(log_p.begin(), log_p.end());
  double total = 0.0;
  std::vector<double> posteriors(n_classes);
  for (std::size_t c = 0; c < n_classes; ++c) {
    posteriors[c] = std::exp(log_p[c] - max_log);
    total += posteriors[c];
  }
  for (double& p : posteriors) p /= total;
  return posteriors;
}

std::string gnb_predict(const GaussianNBModel& model,
                        std::span<const double> row) {
  auto posteriors = gnb_posteriors(model, row);
  std::size_t best = 0;
  for (std::size_t c = 1; c < posteriors.size(); ++c)
    if (posteriors[c] > posteriors[best]) best = c;
  return model.classes[best];
}

ClassifyMetrics classify_metrics(const std::vector<std::string>& predictions,
                                 const std::vector<std::string>& gold) {
  if (predictions.empty()) throw InputError("classify_metrics: empty input");
  if (predictions.size() != gold.size())
    throw InputError("classify_metrics: prediction and gold counts differ");

  std::set<std::string> class_set(gold.begin(), gold.end());
  class_set.insert(predictions.begin(), predictions.end());

  ClassifyMetrics metrics;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < gold.size(); ++i)
    if (predictions[i] == gold[i]) ++correct;
  metrics.accuracy =
      static_cast<double>(correct) / static_cast<double>(gold.size());

  double f1_sum = 0.0;
  for (const auto& cls : class_set) {
    std::size_t tp = 0, fp = 0, fn = 0, support = 0;
    for (std::size_t i = 0; i < gold.size(); ++i) {
      bool is_gold = gold[i] == cls;
      bool is_pred = predictions[i] == cls;
      if (is_gold) ++support;
      if (is_gold && is_pred) ++tp;
      if (!is_gold && is_pred) ++fp;
      if (is_gold && !is_pred) ++fn;
    }
    double precision = (tp + fp) > 0
                           ? static_cast<double>(tp) / static_cast<double>(tp + fp)
                           : 0.0;
    double recall = (tp + fn) > 0
                        ? static_cast<double>(tp) / static_cast<double>(tp + fn)
                        : 0.0;
    double f1 = (precision + recall) > 0.0
                    ? 2.0 * precision * recall / (precision + recall)
                    : 0.0;
    metrics.per_class.push_back({cls, f1, support});
    f1_sum += f1;
  }
  metrics.macro_f1 = f1_sum / static_cast<double>(class_set.size());
  return metrics;
}

ClassifyCvReport cross_validate_classification(const Lexicon& lexicon,
                                               const Corpus& docs, WordRep rep,
                                               int k, std::uint64_t seed) {
  FeatureMatrix feat = featurize(lexicon, docs, rep);

  // Class label: the dominant emotion of the document's votes. Featurize
  // already dropped zero-vote documents, so the label is always defined.
  std::vector<std::string> gold;
  gold.reserve(feat.kept_ids.size());
  {
    std::map<std::string, const RawDocument*> by_id;
    for (const auto& doc : docs.documents) by_id[doc.id] = &doc;
    for (const auto& id : feat.kept_ids) {
      auto idx = dominant_emotion(*by_id.at(id));
      gold.push_back(docs.space.label(*idx));
    }
  }

  FoldPlan plan = FoldPlan::make(feat.kept_ids, k, seed);
  std::size_t n = feat.rows.size();
  std::vector<int> fold_of(n);
  for (std::size_t i = 0; i < n; ++i)
    fold_of[i] = plan.assignments.at(feat.kept_ids[i]);

  std::vector<std::string> predictions(n);
  for (int fold = 0; fold < k; ++fold) {
    std::vector<std::vector<double>> train_x;
    std::vector<std::string> train_y;
    std::vector<std::size_t> test_rows;
    for (std::size_t i = 0; i < n; ++i) {
      if (fold_of[i] == fold) {
        test_rows.push_back(i);
      } else {
        train_x.push_back(feat.rows[i]);
        train_y.push_back(gold[i]);
      }
    }
    if (test_rows.empty()) continue;
    if (train_x.empty())
      throw ComputeError("fold " + std::to_string(fold) +
                         " leaves no training documents");
    GaussianNBModel model = fit_gnb(train_x, train_y);
    for (std::size_t i : test_rows)
      predictions[i] = gnb_predict(model, feat.rows[i]);
  }

  ClassifyCvReport report;
  report.metrics = classify_metrics(predictions, gold);
  report.k = k;
  report.seed = seed;
  report.fold_sizes = plan.fold_sizes;
  report.documents_used = n;
  report.documents_skipped = feat.skipped_ids.size();
  return report;
}

namespace {

std::string fold_sizes_string(const std::vector<std::size_t>& sizes) {
  std::ostringstream out;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (i > 0) out << ',';
    out << sizes[i];
  }
  return out.str();
}

}  // namespace

std::string cv_report_to_tsv(const CvReport& report) {
  std::ostringstream out;
  for (const auto& [key, value] : report.config)
    out << "# " << key << '\t' << value << '\n';
  out << "# k\t" << report.k << '\n';
  out << "# seed\t" << report.seed << '\n';
  out << "# ridge\t" << fmt_fixed(report.ridge) << '\n';
  out << "# fold_sizes\t" << fold_sizes_string(report.fold_sizes) << '\n';
  out << "# documents_used\t" << report.documents_used << '\n';
  out << "# documents_skipped\t" << report.documents_skipped << '\n';
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

std::string cv_report_to_jsonl(const CvReport& report) {
  json j;
  json config = json::object();
  for (const auto& [key, value] : report.config) config[key] = value;
  j["config"] = std::move(config);
  j["k"] = report.k;
  j["seed"] = report.seed;
  j["ridge"] = report.ridge;
  j["fold_sizes"] = report.fold_sizes;
  j["documents_used"] = report.documents_used;
  j["documents_skipped"] = report.documents_skipped;
  json per = json::object();
  for (const auto& ec : report.per_emotion) {
    if (ec.r) {
      per[ec.label] = std::round(*ec.r * 1e6) / 1e6;
    } else {
      per[ec.label] = nullptr;
    }
  }
  j["pearson_r"] = std::move(per);
  if (report.average) {
    j["average"] = std::round(*report.average * 1e6) / 1e6;
  } else {
    j["average"] = nullptr;
  }
  return j.dump() + "\n";
}

std::string classify_report_to_tsv(const ClassifyCvReport& report) {
  std::ostringstream out;
  for (const auto& [key, value] : report.config)
    out << "# " << key << '\t' << value << '\n';
  out << "# k\t" << report.k << '\n';
  out << "# seed\t" << report.seed << '\n';
  out << "# fold_sizes\t" << fold_sizes_string(report.fold_sizes) << '\n';
  out << "# documents_used\t" << report.documents_used << '\n';
  out << "# documents_skipped\t" << report.documents_skipped << '\n';
  out << "metric\tvalue\n";
  out << "accuracy\t" << fmt_fixed(report.metrics.accuracy) << '\n';
  out << "macro_f1\t" << fmt_fixed(report.metrics.macro_f1) << '\n';
  for (const auto& pc : report.metrics.per_class)
    out << "f1_" << pc.label << '\t' << fmt_fixed(pc.f1) << '\n';
  return out.str();
}

std::string classify_report_to_jsonl(const ClassifyCvReport& report) {
  json j;
  json config = json::object();
  for (const auto& [key, value] : report.config) config[key] = value;
  j["config"] = std::move(config);
  j["k"] = report.k;
  j["seed"] = report.seed;
  j["fold_sizes"] = report.fold_sizes;
  j["documents_used"] = report.documents_used;
  j["documents_skipped"] = report.documents_skipped;
  j["accuracy"] = std::round(report.metrics.accuracy * 1e6) / 1e6;
  j["macro_f1"] = std::round(report.metrics.macro_f1 * 1e6) / 1e6;
  json per = json::object();
  for (const auto& pc : report.metrics.per_class)
    per[pc.label] = std::round(pc.f1 * 1e6) / 1e6;
  j["per_class_f1"] = std::move(per);
  return j.dump() + "\n";
}

}  // namespace moodlex
