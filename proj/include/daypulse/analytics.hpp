#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "daypulse/corpus.hpp"
#include "daypulse/dtm.hpp"
#include "daypulse/sentiment.hpp"

namespace daypulse {

// exact integer counts indexed day x topic x polarity (positive, negative,
// neutral)
struct SentimentCube {
  std::vector<CivilDate> days;
  int k = 0;
  std::vector<int64_t> counts;

  int64_t& at(size_t day, int32_t topic, Polarity p) {
    return counts[(day * k + topic) * 3 + static_cast<size_t>(p)];
  }
  int64_t at(size_t day, int32_t topic, Polarity p) const {
    return counts[(day * k + topic) * 3 + static_cast<size_t>(p)];
  }
};

// Tallies one cell per assignment. Every assigned document must have a
// score and every assignment day must be in `days`.
SentimentCube build_cube(const std::vector<Assignment>& assignments,
                         const std::map<std::string, SentimentScore>& scores,
                         const std::vector<CivilDate>& days, int k);

int64_t total_tweets(const SentimentCube& cube);

struct DailyOverall {
  CivilDate day;
  int64_t pos = 0;
  int64_t neg = 0;
  int64_t neu = 0;
};

// polarity counts per day, summed over topics
std::vector<DailyOverall> daily_overall(const SentimentCube& cube);

// CSV "day,topic,pos,neg,neu"; with ratios, each cell is divided by the
// day-topic total and empty cells are written as zeros with a warning
void write_cube_csv(const SentimentCube& cube, const std::string& path,
                    bool ratios = false);
// CSV "day,pos,neg,neu"
void write_overall_csv(const SentimentCube& cube, const std::string& path);

}  // namespace daypulse
