#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "moodlex/corpus.hpp"
#include "moodlex/induction.hpp"
#include "moodlex/scoring.hpp"

namespace moodlex {

// Per-document rows of averaged lexicon scores (the features) and gold vote
// percentages (the targets). Documents with zero coverage or zero votes are
// omitted, never zero-filled.
struct FeatureMatrix {
  std::vector<std::vector<double>> rows;     // |kept| x N features
  std::vector<std::vector<double>> targets;  // |kept| x N gold percentages
  std::vector<std::string> kept_ids;
  std::vector<std::string> skipped_ids;
};

FeatureMatrix featurize(const Lexicon& lexicon, const Corpus& docs,
                        WordRep rep);

struct LinearModel {
  std::vector<double> weights;
  double intercept = 0.0;
  double ridge = 0.0;
};

// Least squares with an L2 penalty on the weights (never the intercept),
// solved by normal equations. Exact on noiseless consistent systems; a
// singular system with ridge 0 raises ComputeError suggesting ridge > 0.
LinearModel fit_linear(const std::vector<std::vector<double>>& X,
                       std::span<const double> y, double ridge);

double predict_linear(const LinearModel& model, std::span<const double> row);

// Seeded assignment of ids to k folds whose sizes differ by at most one.
struct FoldPlan {
  int k = 0;
  std::uint64_t seed = 0;
  std::map<std::string, int> assignments;
  std::vector<std::size_t> fold_sizes;

  static FoldPlan make(const std::vector<std::string>& ids, int k,
                       std::uint64_t seed);
};

struct CvReport {
  std::vector<EmotionCorrelation> per_emotion;  // pooled-prediction Pearson
  std::optional<double> average;
  int k = 0;
  std::uint64_t seed = 0;
  double ridge = 0.0;
  std::vector<std::size_t> fold_sizes;
  std::size_t documents_used = 0;
  std::size_t documents_skipped = 0;
  std::map<std::string, std::string> config;
};

std::string cv_report_to_tsv(const CvReport& report);
std::string cv_report_to_jsonl(const CvReport& report);

// For each emotion: train on k-1 folds, predict the held-out fold, pool all
// held-out predictions and compute one Pearson. Deterministic per seed.
CvReport cross_validate_regression(const Lexicon& lexicon, const Corpus& docs,
                                   WordRep rep, int k, std::uint64_t seed,
                                   double ridge);

struct GaussianNBModel {
  std::vector<std::string> classes;  // sorted
  std::vector<double> priors;
  std::vector<std::vector<double>> means;      // class x feature
  std::vector<std::vector<double>> variances;  // floored at 1e-9
};

GaussianNBModel fit_gnb(const std::vector<std::vector<double>>& X,
                        const std::vector<std::string>& labels);

// Class posteriors (sum to 1) and the argmax class.
std::vector<double> gnb_posteriors(const GaussianNBModel& model,
                                   std::span<const double> row);
std::string gnb_predict(const GaussianNBModel& model,
                        std::span<const double> row);

struct ClassMetrics {
  std::string label;
  double f1 = 0.0;
  std::size_t support = 0;
};

struct ClassifyMetrics {
  double accuracy = 0.0;
  double macro_f1 = 0.0;  // unweighted mean over classes seen in gold or predictions
  std::vector<ClassMetrics> per_class;
};

ClassifyMetrics classify_metrics(const std::vector<std::string>& predictions,
                                 const std::vector<std::string>& gold);

struct ClassifyCvReport {
  ClassifyMetrics metrics;
  int k = 0;
  std::uint64_t seed = 0;
  std::vector<std::size_t> fold_sizes;
  std::size_t documents_used = 0;
  std::size_t documents_skipped = 0;
  std::map<std::string, std::string> config;
};

std::string classify_report_to_tsv(const ClassifyCvReport& report);
std::string classify_report_to_jsonl(const ClassifyCvReport& report);

// Gaussian NB over lexicon-score features with dominant-emotion class
// labels, k-fold cross-validated, predictions pooled across folds.
ClassifyCvReport cross_validate_classification(const Lexicon& lexicon,
                                               const Corpus& docs, WordRep rep,
                                               int k, std::uint64_t seed);

}  // namespace moodlex
