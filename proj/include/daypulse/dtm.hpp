#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "daypulse/corpus.hpp"
#include "daypulse/lda.hpp"

namespace daypulse {

struct DtmConfig {
  int k = 10;
  double kappa = 1000.0;  // topic-word prior strength between adjacent days
  double rho = 10.0;      // document-topic prior strength between adjacent days
  LdaConfig lda;          // per-slice sampler settings; lda.k is ignored
};

// per-slice sampler seed, derived so slice t of a run is reproducible on
// its own with an independent fit
uint64_t slice_seed(uint64_t base, int slice);

struct BowSlice {
  CivilDate date;
  std::vector<BowDoc> docs;
};

struct DtmModel {
  int k = 0;
  int32_t vocab_size = 0;
  std::vector<CivilDate> dates;
  std::vector<LdaModel> slices;
  std::vector<bool> copied;  // true when a slice had no documents and its
                             // phi was carried over from the previous day
};

// Fits one LDA per day, chaining priors forward: day t > 0 samples with
// eta_kw = eta + kappa * phi_{t-1}[k][w] and, when the previous day has
// documents, alpha_k = alpha + rho * mean(theta_{t-1}[.][k]). kappa = 0 and
// rho = 0 reduce every slice to an independent fit. A day with no documents
// carries the previous phi forward and is flagged in `copied`; the first
// day must be non-empty.
DtmModel fit_dtm(const std::vector<BowSlice>& slices, int32_t vocab_size,
                 const DtmConfig& cfg);

// argmax topic for one document; ties go to the lowest index
int32_t assign_topic(std::span<const double> theta_row);

struct Assignment {
  std::string doc_id;
  CivilDate day;
  int32_t topic;
};

std::vector<Assignment> assign_topics(const DtmModel& model);

struct TrajectoryEntry {
  CivilDate day;
  int32_t topic;
  int32_t rank;  // 1-based
  int32_t word_id;
  double prob;
};

// top-n words per topic per day, ordered by descending phi then word id
std::vector<TrajectoryEntry> topic_trajectory(const DtmModel& model, int topn);

struct TopTopic {
  CivilDate day;
  int32_t rank;  // 1-based
  int32_t topic;
  int64_t volume;  // documents assigned to the topic that day
};

std::vector<TopTopic> top_topics_per_slice(const DtmModel& model, int limit);

// CSV "doc_id,day,topic"
void write_assignments_csv(const std::vector<Assignment>& rows,
                           const std::string& path);
// CSV "day,topic,rank,word,prob"
void write_trajectory_csv(const std::vector<TrajectoryEntry>& rows,
                          const Vocabulary& vocab, const std::string& path);
// CSV "day,rank,topic,volume"
void write_top_topics_csv(const std::vector<TopTopic>& rows,
                          const std::string& path);

}  // namespace daypulse
