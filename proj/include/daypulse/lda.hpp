#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "daypulse/matrix.hpp"
#include "daypulse/preprocess.hpp"

namespace daypulse {

struct LdaConfig {
  int k = 10;
  double alpha = 0.0;  // <= 0 selects the 50/k default at fit time
  double eta = 0.01;
  int iterations = 200;
  int burn_in = 100;
  uint64_t seed = 42;

  double effective_alpha() const { return alpha > 0.0 ? alpha : 50.0 / k; }
};

struct LdaModel {
  int k = 0;
  int32_t vocab_size = 0;
  std::vector<std::string> doc_ids;      // input order
  DMatrix phi;                           // k x V topic-word probabilities
  DMatrix theta;                         // D x k document-topic probabilities
  std::vector<std::vector<int32_t>> z;   // final per-token assignments
  IMatrix nkw;                           // k x V sampler counts
  std::vector<int64_t> nk;               // per-topic token totals
  IMatrix ndk;                           // D x k sampler counts
};

// called after every Gibbs sweep with the per-topic token totals
using SweepObserver =
    std::function<void(int sweep, std::span<const int64_t> nk)>;

// Collapsed Gibbs sampling. The full conditional for token w in doc d is
//   p(z = k) ∝ (ndk + alpha_k) * (nkw + eta_kw) / (nk + sum_w eta_kw)
// with eta_kw = eta + kappa * prior_phi[k][w] when a topic-word prior is
// chained in, and alpha_k = alpha * K * prior_theta_mean[k] when a
// document prior is chained in. phi and theta are posterior means over the
// post-burn-in sweeps. Results are a pure function of (corpus, cfg): each
// document samples from its own substream keyed by (seed, doc id), and
// sweeps visit documents in doc-id order, so document order cannot matter.
LdaModel fit_lda(const std::vector<BowDoc>& corpus, int32_t vocab_size,
                 const LdaConfig& cfg, const DMatrix* prior_phi = nullptr,
                 double prior_kappa = 0.0,
                 const std::vector<double>* prior_theta_mean = nullptr,
                 const SweepObserver& observer = nullptr);

struct CoherenceResult {
  std::vector<double> per_topic;
  double mean = 0.0;
  std::vector<std::vector<int32_t>> top_words;  // per topic, rank order
  int64_t warnings = 0;  // pairs whose right word never occurs
};

// Intrinsic (UMass-style) coherence: for the topn highest-phi words of each
// topic, sum log((D(w_i, w_j) + epsilon) / D(w_j)) over pairs i < j, where
// D counts documents of `corpus` containing the word(s). A word with no
// document occurrences has D floored at 1 and is counted as a warning.
CoherenceResult coherence(const LdaModel& model,
                          const std::vector<BowDoc>& corpus, int topn,
                          double epsilon = 1e-12);

struct SelectKResult {
  int best_k = 0;
  std::vector<std::pair<int, double>> curve;  // (k, mean coherence)
};

// Fits one model per grid entry and picks the coherence argmax, ties going
// to the smaller k. A k whose fit fails is excluded with a warning.
SelectKResult select_k(const std::vector<BowDoc>& corpus, int32_t vocab_size,
                       const std::vector<int>& grid, const LdaConfig& tmpl,
                       int topn = 10, double epsilon = 1e-12);

// CSV "topic,word_id,prob"
void write_phi_csv(const DMatrix& phi, const std::string& path);
// CSV "doc_id,topic,prob"
void write_theta_csv(const LdaModel& model, const std::string& path);
// CSV "k,mean_coherence"
void write_coherence_csv(const SelectKResult& result, const std::string& path);

}  // namespace daypulse
