#include "daypulse/dtm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "daypulse/csv.hpp"
#include "daypulse/rng.hpp"

namespace daypulse {

uint64_t slice_seed(uint64_t base, int slice) {
  uint64_t state = base + 0x9e3779b97f4a7c15ULL * static_cast<uint64_t>(slice);
  return splitmix64(state);
}

DtmModel fit_dtm(const std::vector<BowSlice>& slices, int32_t vocab_size,
                 const DtmConfig& cfg) {
  if (slices.empty()) throw std::invalid_argument("dtm: no slices");
  if (cfg.k < 1) throw std::invalid_argument("dtm: k must be >= 1");
  if (cfg.kappa < 0.0) throw std::invalid_argument("dtm: kappa must be >= 0");
  if (cfg.rho < 0.0) throw std::invalid_argument("dtm: rho must be >= 0");
  if (slices.front().docs.empty())
    throw std::invalid_argument("dtm: first slice has no documents");
  for (size_t t = 0; t + 1 < slices.size(); ++t)
    if (!(slices[t].date < slices[t + 1].date))
      throw std::invalid_argument("dtm: slice dates must be ascending");

  DtmModel model;
  model.k = cfg.k;
  model.vocab_size = vocab_size;
  model.dates.reserve(slices.size());
  model.slices.reserve(slices.size());
  model.copied.reserve(slices.size());

  const double alpha = LdaConfig{cfg.k, cfg.lda.alpha}.effective_alpha();

  for (size_t t = 0; t < slices.size(); ++t) {
    model.dates.push_back(slices[t].date);
    if (slices[t].docs.empty()) {
      std::fprintf(stderr, "warning: %s has no documents, copying topics\n",
                   to_string(slices[t].date).c_str());
      LdaModel carried;
      carried.k = cfg.k;
      carried.vocab_size = vocab_size;
      carried.phi = model.slices.back().phi;
      model.slices.push_back(std::move(carried));
      model.copied.push_back(true);
      continue;
    }

    LdaConfig slice_cfg = cfg.lda;
    slice_cfg.k = cfg.k;
    slice_cfg.seed = slice_seed(cfg.lda.seed, static_cast<int>(t));

    const DMatrix* prior_phi = nullptr;
    std::vector<double> prior_theta;
    const std::vector<double>* prior_theta_ptr = nullptr;
    if (t > 0) {
      if (cfg.kappa > 0.0) prior_phi = &model.slices[t - 1].phi;
      const auto& prev_theta = model.slices[t - 1].theta;
      if (cfg.rho > 0.0 && prev_theta.rows() > 0) {
        // alpha_k = alpha + rho * mean previous-day theta, expressed as the
        // alpha * k * prior form the sampler takes
        prior_theta.assign(static_cast<size_t>(cfg.k), 0.0);
        for (size_t d = 0; d < prev_theta.rows(); ++d)
          for (int k = 0; k < cfg.k; ++k) prior_theta[k] += prev_theta[d][k];
        for (int k = 0; k < cfg.k; ++k) {
          const double mean_k =
              prior_theta[k] / static_cast<double>(prev_theta.rows());
          prior_theta[k] = (alpha + cfg.rho * mean_k) / (alpha * cfg.k);
        }
        prior_theta_ptr = &prior_theta;
      }
    }

    model.slices.push_back(fit_lda(slices[t].docs, vocab_size, slice_cfg,
                                   prior_phi, cfg.kappa, prior_theta_ptr));
    model.copied.push_back(false);
  }
  return model;
}

int32_t assign_topic(std::span<const double> theta_row) {
  if (theta_row.empty()) throw std::invalid_argument("assign: empty theta row");
  int32_t best = 0;
  for (size_t k = 0; k < theta_row.size(); ++k) {
    if (!std::isfinite(theta_row[k]))
      throw std::runtime_error("assign: non-finite topic probability");
    if (theta_row[k] > theta_row[best]) best = static_cast<int32_t>(k);
  }
  return best;
}

std::vector<Assignment> assign_topics(const DtmModel& model) {
  std::vector<Assignment> rows;
  for (size_t t = 0; t < model.slices.size(); ++t) {
    const auto& slice = model.slices[t];
    for (size_t d = 0; d < slice.theta.rows(); ++d)
      rows.push_back({slice.doc_ids[d], model.dates[t],
                      assign_topic(slice.theta.row(d))});
  }
  return rows;
}

std::vector<TrajectoryEntry> topic_trajectory(const DtmModel& model, int topn) {
  if (topn < 1) throw std::invalid_argument("trajectory: topn must be >= 1");
  const int n = std::min<int>(topn, model.vocab_size);
  if (n < topn)
    std::fprintf(stderr,
                 "warning: trajectory topn %d truncated to vocabulary size %d\n",
                 topn, model.vocab_size);

  std::vector<TrajectoryEntry> rows;
  std::vector<int32_t> ids(static_cast<size_t>(model.vocab_size));
  for (size_t t = 0; t < model.slices.size(); ++t) {
    for (int k = 0; k < model.k; ++k) {
      auto row = model.slices[t].phi[k];
      std::iota(ids.begin(), ids.end(), 0);
      std::partial_sort(ids.begin(), ids.begin() + n, ids.end(),
                        [&](int32_t a, int32_t b) {
                          if (row[a] != row[b]) return row[a] > row[b];
                          return a < b;
                        });
      for (int r = 0; r < n; ++r)
        rows.push_back({model.dates[t], k, r + 1, ids[r], row[ids[r]]});
    }
  }
  return rows;
}

std::vector<TopTopic> top_topics_per_slice(const DtmModel& model, int limit) {
  if (limit < 1) throw std::invalid_argument("top topics: limit must be >= 1");
  std::vector<TopTopic> rows;
  for (size_t t = 0; t < model.slices.size(); ++t) {
    const auto& slice = model.slices[t];
    std::vector<int64_t> volume(static_cast<size_t>(model.k), 0);
    for (size_t d = 0; d < slice.theta.rows(); ++d)
      volume[assign_topic(slice.theta.row(d))] += 1;

    std::vector<int32_t> topics(static_cast<size_t>(model.k));
    std::iota(topics.begin(), topics.end(), 0);
    std::sort(topics.begin(), topics.end(), [&](int32_t a, int32_t b) {
      if (volume[a] != volume[b]) return volume[a] > volume[b];
      return a < b;
    });
    const int n = std::min<int>(limit, model.k);
    for (int r = 0; r < n; ++r)
      rows.push_back({model.dates[t], r + 1, topics[r], volume[topics[r]]});
  }
  return rows;
}

namespace {

FILE* open_or_throw(const std::string& path) {
  FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  return f;
}

}  // namespace

void write_assignments_csv(const std::vector<Assignment>& rows,
                           const std::string& path) {
  FILE* f = open_or_throw(path);
  std::fputs("doc_id,day,topic\n", f);
  for (const auto& row : rows)
    std::fprintf(f, "%s,%s,%d\n", csv_escape(row.doc_id).c_str(),
                 to_string(row.day).c_str(), row.topic);
  std::fclose(f);
}

void write_trajectory_csv(const std::vector<TrajectoryEntry>& rows,
                          const Vocabulary& vocab, const std::string& path) {
  FILE* f = open_or_throw(path);
  std::fputs("day,topic,rank,word,prob\n", f);
  for (const auto& row : rows)
    std::fprintf(f, "%s,%d,%d,%s,%.17g\n", to_string(row.day).c_str(),
                 row.topic, row.rank,
                 csv_escape(vocab.token_of(row.word_id)).c_str(), row.prob);
  std::fclose(f);
}

void write_top_topics_csv(const std::vector<TopTopic>& rows,
                          const std::string& path) {
  FILE* f = open_or_throw(path);
  std::fputs("day,rank,topic,volume\n", f);
  for (const auto& row : rows)
    std::fprintf(f, "%s,%d,%d,%lld\n", to_string(row.day).c_str(), row.rank,
                 row.topic, static_cast<long long>(row.volume));
  std::fclose(f);
}

}  // namespace daypulse
