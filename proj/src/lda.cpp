#include "daypulse/lda.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "daypulse/csv.hpp"
#include "daypulse/rng.hpp"

namespace daypulse {

namespace {

void validate_config(const LdaConfig& cfg) {
  if (cfg.k < 1) throw std::invalid_argument("lda: k must be >= 1");
  if (cfg.effective_alpha() <= 0.0)
    throw std::invalid_argument("lda: alpha must be > 0");
  if (cfg.eta <= 0.0) throw std::invalid_argument("lda: eta must be > 0");
  if (cfg.iterations < 1)
    throw std::invalid_argument("lda: iterations must be >= 1");
  if (cfg.burn_in < 0 || cfg.burn_in >= cfg.iterations)
    throw std::invalid_argument("lda: burn_in must be in [0, iterations)");
}

// documents are swept in doc-id order regardless of input order
std::vector<size_t> canonical_order(const std::vector<BowDoc>& corpus) {
  std::vector<size_t> order(corpus.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (corpus[a].doc_id != corpus[b].doc_id)
      return corpus[a].doc_id < corpus[b].doc_id;
    return a < b;
  });
  return order;
}

}  // namespace

LdaModel fit_lda(const std::vector<BowDoc>& corpus, int32_t vocab_size,
                 const LdaConfig& cfg, const DMatrix* prior_phi,
                 double prior_kappa, const std::vector<double>* prior_theta_mean,
                 const SweepObserver& observer) {
  validate_config(cfg);
  if (vocab_size < 1) throw std::invalid_argument("lda: empty vocabulary");
  if (corpus.empty()) throw std::invalid_argument("lda: empty corpus");
  if (prior_phi &&
      (prior_phi->rows() != static_cast<size_t>(cfg.k) ||
       prior_phi->cols() != static_cast<size_t>(vocab_size)))
    throw std::invalid_argument("lda: prior phi shape mismatch");
  if (prior_theta_mean && prior_theta_mean->size() != static_cast<size_t>(cfg.k))
    throw std::invalid_argument("lda: prior theta length mismatch");

  const int K = cfg.k;
  const int32_t V = vocab_size;
  const size_t D = corpus.size();
  const double alpha = cfg.effective_alpha();
  const double eta = cfg.eta;

  if (D < static_cast<size_t>(K))
    std::fprintf(stderr, "warning: fitting %d topics on %zu documents\n", K, D);

  // expand bags to token lists; z is indexed the same way
  std::vector<std::vector<int32_t>> tokens(D);
  int64_t total_tokens = 0;
  for (size_t d = 0; d < D; ++d) {
    for (const auto& [w, c] : corpus[d].counts) {
      if (w < 0 || w >= V)
        throw std::invalid_argument("lda: word id outside vocabulary");
      if (c < 1) throw std::invalid_argument("lda: non-positive word count");
      tokens[d].insert(tokens[d].end(), static_cast<size_t>(c), w);
    }
    total_tokens += static_cast<int64_t>(tokens[d].size());
  }
  if (total_tokens == 0) throw std::invalid_argument("lda: corpus has no tokens");

  std::vector<double> alpha_k(static_cast<size_t>(K), alpha);
  if (prior_theta_mean) {
    for (int k = 0; k < K; ++k) {
      alpha_k[k] = alpha * K * (*prior_theta_mean)[k];
      if (!(alpha_k[k] > 0.0))
        throw std::invalid_argument("lda: prior theta yields non-positive alpha");
    }
  }
  const double alpha_sum =
      std::accumulate(alpha_k.begin(), alpha_k.end(), 0.0);

  // per-topic smoothing mass: eta*V, plus kappa when a prior row (which
  // sums to 1) is folded into the word-level pseudo-counts
  const double eta_mass = eta * V + (prior_phi ? prior_kappa : 0.0);

  LdaModel model;
  model.k = K;
  model.vocab_size = V;
  model.doc_ids.reserve(D);
  for (const auto& doc : corpus) model.doc_ids.push_back(doc.doc_id);
  model.nkw = IMatrix(static_cast<size_t>(K), static_cast<size_t>(V));
  model.nk.assign(static_cast<size_t>(K), 0);
  model.ndk = IMatrix(D, static_cast<size_t>(K));
  model.z.resize(D);

  const auto order = canonical_order(corpus);

  std::vector<Xoshiro256pp> streams;
  streams.reserve(D);
  for (size_t d = 0; d < D; ++d)
    streams.emplace_back(doc_stream_seed(cfg.seed, corpus[d].doc_id));

  for (size_t d = 0; d < D; ++d) model.z[d].resize(tokens[d].size());
  for (size_t pos : order) {
    auto& rng = streams[pos];
    for (size_t i = 0; i < tokens[pos].size(); ++i) {
      int32_t k = static_cast<int32_t>(rng.next_below(static_cast<uint64_t>(K)));
      model.z[pos][i] = k;
      model.ndk[pos][k] += 1;
      model.nkw[k][tokens[pos][i]] += 1;
      model.nk[k] += 1;
    }
  }

  DMatrix phi_acc(static_cast<size_t>(K), static_cast<size_t>(V));
  DMatrix theta_acc(D, static_cast<size_t>(K));
  std::vector<double> weight(static_cast<size_t>(K));

  for (int sweep = 0; sweep < cfg.iterations; ++sweep) {
    for (size_t pos : order) {
      auto& rng = streams[pos];
      auto ndk_row = model.ndk[pos];
      const auto& toks = tokens[pos];
      auto& zs = model.z[pos];
      for (size_t i = 0; i < toks.size(); ++i) {
        const int32_t w = toks[i];
        const int32_t old_k = zs[i];
        ndk_row[old_k] -= 1;
        model.nkw[old_k][w] -= 1;
        model.nk[old_k] -= 1;

        double total = 0.0;
        for (int k = 0; k < K; ++k) {
          const double eta_kw =
              eta + (prior_phi ? prior_kappa * (*prior_phi)[k][w] : 0.0);
          total += (ndk_row[k] + alpha_k[k]) *
                   (model.nkw[k][w] + eta_kw) / (model.nk[k] + eta_mass);
          weight[k] = total;
        }
        const double u = rng.next_double() * total;
        int32_t new_k = K - 1;
        for (int k = 0; k < K; ++k) {
          if (u < weight[k]) {
            new_k = k;
            break;
          }
        }
        zs[i] = new_k;
        ndk_row[new_k] += 1;
        model.nkw[new_k][w] += 1;
        model.nk[new_k] += 1;
      }
    }

    if (observer) observer(sweep, std::span<const int64_t>(model.nk));

    if (sweep >= cfg.burn_in) {
      for (int k = 0; k < K; ++k) {
        const double denom = model.nk[k] + eta_mass;
        auto acc = phi_acc[k];
        auto counts = model.nkw[k];
        for (int32_t w = 0; w < V; ++w) {
          const double eta_kw =
              eta + (prior_phi ? prior_kappa * (*prior_phi)[k][w] : 0.0);
          acc[w] += (counts[w] + eta_kw) / denom;
        }
      }
      for (size_t d = 0; d < D; ++d) {
        const double denom =
            static_cast<double>(tokens[d].size()) + alpha_sum;
        auto acc = theta_acc[d];
        auto counts = model.ndk[d];
        for (int k = 0; k < K; ++k) acc[k] += (counts[k] + alpha_k[k]) / denom;
      }
    }
  }

  const double samples = static_cast<double>(cfg.iterations - cfg.burn_in);
  model.phi = DMatrix(static_cast<size_t>(K), static_cast<size_t>(V));
  model.theta = DMatrix(D, static_cast<size_t>(K));
  for (int k = 0; k < K; ++k) {
    double row_sum = 0.0;
    for (int32_t w = 0; w < V; ++w) row_sum += phi_acc[k][w];
    for (int32_t w = 0; w < V; ++w)
      model.phi[k][w] = phi_acc[k][w] / samples / (row_sum / samples);
  }
  for (size_t d = 0; d < D; ++d) {
    double row_sum = 0.0;
    for (int k = 0; k < K; ++k) row_sum += theta_acc[d][k];
    for (int k = 0; k < K; ++k)
      model.theta[d][k] = theta_acc[d][k] / samples / (row_sum / samples);
  }
  return model;
}

CoherenceResult coherence(const LdaModel& model,
                          const std::vector<BowDoc>& corpus, int topn,
                          double epsilon) {
  if (topn < 2) throw std::invalid_argument("coherence: topn must be >= 2");
  if (epsilon <= 0.0)
    throw std::invalid_argument("coherence: epsilon must be > 0");

  const int K = model.k;
  const int32_t V = model.vocab_size;
  const int n = std::min<int>(topn, V);
  if (n < topn)
    std::fprintf(stderr,
                 "warning: coherence topn %d truncated to vocabulary size %d\n",
                 topn, V);

  CoherenceResult result;
  result.top_words.resize(static_cast<size_t>(K));
  std::vector<int32_t> ids(static_cast<size_t>(V));
  for (int k = 0; k < K; ++k) {
    std::iota(ids.begin(), ids.end(), 0);
    auto row = model.phi[k];
    std::partial_sort(ids.begin(), ids.begin() + n, ids.end(),
                      [&](int32_t a, int32_t b) {
                        if (row[a] != row[b]) return row[a] > row[b];
                        return a < b;
                      });
    result.top_words[k].assign(ids.begin(), ids.begin() + n);
  }

  // document-occurrence lists for every word that appears in a top list
  std::unordered_map<int32_t, std::vector<int32_t>> occ;
  for (const auto& top : result.top_words)
    for (int32_t w : top) occ.try_emplace(w);
  for (size_t d = 0; d < corpus.size(); ++d) {
    for (const auto& [w, c] : corpus[d].counts) {
      auto it = occ.find(w);
      if (it != occ.end()) it->second.push_back(static_cast<int32_t>(d));
    }
  }

  auto co_count = [](const std::vector<int32_t>& a,
                     const std::vector<int32_t>& b) {
    int64_t n = 0;
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
      if (a[i] < b[j]) ++i;
      else if (a[i] > b[j]) ++j;
      else ++n, ++i, ++j;
    }
    return n;
  };

  result.per_topic.resize(static_cast<size_t>(K), 0.0);
  for (int k = 0; k < K; ++k) {
    const auto& top = result.top_words[k];
    double score = 0.0;
    for (size_t i = 0; i + 1 < top.size(); ++i) {
      for (size_t j = i + 1; j < top.size(); ++j) {
        const auto& di = occ[top[i]];
        const auto& dj = occ[top[j]];
        int64_t denom = static_cast<int64_t>(dj.size());
        if (denom == 0) {
          denom = 1;
          result.warnings += 1;
          std::fprintf(stderr,
                       "warning: coherence word %" PRId32
                       " absent from corpus, flooring count to 1\n",
                       top[j]);
        }
        score += std::log((static_cast<double>(co_count(di, dj)) + epsilon) /
                          static_cast<double>(denom));
      }
    }
    result.per_topic[k] = score;
  }
  result.mean =
      std::accumulate(result.per_topic.begin(), result.per_topic.end(), 0.0) /
      static_cast<double>(K);
  return result;
}

SelectKResult select_k(const std::vector<BowDoc>& corpus, int32_t vocab_size,
                       const std::vector<int>& grid, const LdaConfig& tmpl,
                       int topn, double epsilon) {
  if (grid.empty()) throw std::invalid_argument("select_k: empty grid");
  for (size_t i = 0; i + 1 < grid.size(); ++i)
    if (grid[i] >= grid[i + 1])
      throw std::invalid_argument("select_k: grid must be strictly ascending");

  SelectKResult result;
  bool have_best = false;
  double best_mean = 0.0;
  for (int k : grid) {
    LdaConfig cfg = tmpl;
    cfg.k = k;
    try {
      LdaModel model = fit_lda(corpus, vocab_size, cfg);
      const double mean = coherence(model, corpus, topn, epsilon).mean;
      result.curve.emplace_back(k, mean);
      if (!have_best || mean > best_mean) {
        have_best = true;
        best_mean = mean;
        result.best_k = k;
      }
    } catch (const std::exception& e) {
      std::fprintf(stderr, "warning: k=%d excluded from selection: %s\n", k,
                   e.what());
    }
  }
  if (!have_best)
    throw std::runtime_error("select_k: every candidate k failed");
  return result;
}

namespace {

FILE* open_or_throw(const std::string& path) {
  FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  return f;
}

}  // namespace

void write_phi_csv(const DMatrix& phi, const std::string& path) {
  FILE* f = open_or_throw(path);
  std::fputs("topic,word_id,prob\n", f);
  for (size_t k = 0; k < phi.rows(); ++k)
    for (size_t w = 0; w < phi.cols(); ++w)
      std::fprintf(f, "%zu,%zu,%.17g\n", k, w, phi[k][w]);
  std::fclose(f);
}

void write_theta_csv(const LdaModel& model, const std::string& path) {
  FILE* f = open_or_throw(path);
  std::fputs("doc_id,topic,prob\n", f);
  for (size_t d = 0; d < model.theta.rows(); ++d) {
    const std::string id = csv_escape(model.doc_ids[d]);
    for (int k = 0; k < model.k; ++k)
      std::fprintf(f, "%s,%d,%.17g\n", id.c_str(), k, model.theta[d][k]);
  }
  std::fclose(f);
}

void write_coherence_csv(const SelectKResult& result, const std::string& path) {
  FILE* f = open_or_throw(path);
  std::fputs("k,mean_coherence\n", f);
  for (const auto& [k, mean] : result.curve)
    std::fprintf(f, "%d,%.17g\n", k, mean);
  std::fclose(f);
}

}  // namespace daypulse
