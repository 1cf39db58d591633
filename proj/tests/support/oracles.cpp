#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>

#include "moodlex/textproc.hpp"

namespace oracles {

using namespace moodlex;

std::map<std::string, EmotionVector> dense_lexicon(const Corpus& corpus,
                                                   WordRep rep,
                                                   long long cutoff) {
  // Own term counting and ordering.
  std::map<std::string, long long> freqs;
  for (const auto& doc : corpus.documents)
    for (const auto& term : term_stream(doc, rep)) freqs[term] += 1;
  std::vector<std::string> terms;
  for (const auto& [term, count] : freqs)
    if (count >= cutoff) terms.push_back(term);

  std::size_t n_terms = terms.size();
  std::size_t n_docs = corpus.documents.size();
  std::size_t n_emotions = corpus.space.size();
  std::map<std::string, std::size_t> index;
  for (std::size_t w = 0; w < n_terms; ++w) index[terms[w]] = w;

  // Dense W x D relative frequencies.
  std::vector<std::vector<double>> wd(n_terms, std::vector<double>(n_docs, 0.0));
  for (std::size_t d = 0; d < n_docs; ++d) {
    std::vector<long long> counts(n_terms, 0);
    long long total = 0;
    for (const auto& term : term_stream(corpus.documents[d], rep)) {
      auto it = index.find(term);
      if (it != index.end()) {
        ++counts[it->second];
        ++total;
      }
    }
    if (total == 0) continue;
    for (std::size_t w = 0; w < n_terms; ++w)
      wd[w][d] = static_cast<double>(counts[w]) / static_cast<double>(total);
  }

  // Dense D x E vote percentages.
  std::vector<std::vector<double>> de(n_docs, std::vector<double>(n_emotions, 0.0));
  for (std::size_t d = 0; d < n_docs; ++d) {
    long long total = corpus.documents[d].total_votes();
    if (total == 0) continue;
    for (std::size_t e = 0; e < n_emotions; ++e)
      de[d][e] = static_cast<double>(corpus.documents[d].votes[e]) /
                 static_cast<double>(total);
  }

  // Triple-loop product.
  std::vector<std::vector<double>> we(n_terms, std::vector<double>(n_emotions, 0.0));
  for (std::size_t w = 0; w < n_terms; ++w)
    for (std::size_t d = 0; d < n_docs; ++d)
      for (std::size_t e = 0; e < n_emotions; ++e)
        we[w][e] += wd[w][d] * de[d][e];

  // Column then row normalization; zero rows dropped.
  std::vector<double> col(n_emotions, 0.0);
  for (std::size_t w = 0; w < n_terms; ++w)
    for (std::size_t e = 0; e < n_emotions; ++e) col[e] += we[w][e];
  std::map<std::string, EmotionVector> out;
  for (std::size_t w = 0; w < n_terms; ++w) {
    EmotionVector row(n_emotions, 0.0);
    double row_sum = 0.0;
    for (std::size_t e = 0; e < n_emotions; ++e) {
      row[e] = col[e] > 0.0 ? we[w][e] / col[e] : 0.0;
      row_sum += row[e];
    }
    if (row_sum == 0.0) continue;
    for (double& v : row) v /= row_sum;
    out[terms[w]] = std::move(row);
  }
  return out;
}

GdModel gd_fit(const std::vector<std::vector<double>>& X,
               const std::vector<double>& y, double ridge,
               std::size_t max_iters) {
  std::size_t n = X.size();
  std::size_t p = X.front().size();
  GdModel model;
  model.weights.assign(p, 0.0);

  // Lipschitz bound via the Frobenius norm of the augmented design.
  double lipschitz = ridge;
  for (const auto& row : X) {
    for (double v : row) lipschitz += v * v;
    lipschitz += 1.0;  // intercept column
  }
  double step = 1.0 / (2.0 * lipschitz);

  std::vector<double> grad_w(p);
  for (std::size_t iter = 0; iter < max_iters; ++iter) {
    std::fill(grad_w.begin(), grad_w.end(), 0.0);
    double grad_b = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      double resid = y[r] - model.intercept;
      for (std::size_t j = 0; j < p; ++j) resid -= model.weights[j] * X[r][j];
      for (std::size_t j = 0; j < p; ++j) grad_w[j] += -2.0 * resid * X[r][j];
      grad_b += -2.0 * resid;
    }
    for (std::size_t j = 0; j < p; ++j) grad_w[j] += 2.0 * ridge * model.weights[j];

    double max_grad = std::abs(grad_b);
    for (double g : grad_w) max_grad = std::max(max_grad, std::abs(g));
    if (max_grad < 1e-10) break;

    for (std::size_t j = 0; j < p; ++j) model.weights[j] -= step * grad_w[j];
    model.intercept -= step * grad_b;
  }
  return model;
}

std::optional<ExpansionRecord> brute_nearest(const std::string& word,
                                             const Lexicon& lexicon,
                                             const EmbeddingModel& model) {
  auto query_it = model.vectors.find(word);
  if (query_it == model.vectors.end()) return std::nullopt;
  const auto& q = query_it->second;

  bool found = false;
  double best_distance = 0.0;
  std::string best_term;
  for (const auto& [term, scores] : lexicon.entries) {
    (void)scores;
    auto it = model.vectors.find(term);
    if (it == model.vectors.end()) continue;
    const auto& v = it->second;
    double dot = 0.0, nq = 0.0, nv = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
      dot += q[i] * v[i];
      nq += q[i] * q[i];
      nv += v[i] * v[i];
    }
    double d = 1.0 - dot / (std::sqrt(nq) * std::sqrt(nv));
    if (!found || d < best_distance ||
        (d == best_distance && term < best_term)) {
      found = true;
      best_distance = d;
      best_term = term;
    }
  }
  if (!found) return std::nullopt;
  return ExpansionRecord{word, best_term, best_distance};
}

}  // namespace oracles
