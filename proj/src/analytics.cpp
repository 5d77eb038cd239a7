#include "daypulse/analytics.hpp"

#include <cstdio>
#include <stdexcept>

namespace daypulse {

SentimentCube build_cube(const std::vector<Assignment>& assignments,
                         const std::map<std::string, SentimentScore>& scores,
                         const std::vector<CivilDate>& days, int k) {
  if (k < 1) throw std::invalid_argument("cube: k must be >= 1");
  for (size_t i = 0; i + 1 < days.size(); ++i)
    if (!(days[i] < days[i + 1]))
      throw std::invalid_argument("cube: days must be strictly ascending");

  std::map<CivilDate, size_t> day_index;
  for (size_t i = 0; i < days.size(); ++i) day_index.emplace(days[i], i);

  SentimentCube cube;
  cube.days = days;
  cube.k = k;
  cube.counts.assign(days.size() * static_cast<size_t>(k) * 3, 0);

  for (const auto& a : assignments) {
    auto day = day_index.find(a.day);
    if (day == day_index.end())
      throw std::runtime_error("cube: assignment day " + to_string(a.day) +
                               " outside the day range");
    if (a.topic < 0 || a.topic >= k)
      throw std::runtime_error("cube: topic index out of range for " +
                               a.doc_id);
    auto score = scores.find(a.doc_id);
    if (score == scores.end())
      throw std::runtime_error("cube: no polarity score for " + a.doc_id);
    cube.at(day->second, a.topic, score->second.label) += 1;
  }
  return cube;
}

int64_t total_tweets(const SentimentCube& cube) {
  int64_t total = 0;
  for (int64_t c : cube.counts) total += c;
  return total;
}

std::vector<DailyOverall> daily_overall(const SentimentCube& cube) {
  std::vector<DailyOverall> rows;
  rows.reserve(cube.days.size());
  for (size_t d = 0; d < cube.days.size(); ++d) {
    DailyOverall row;
    row.day = cube.days[d];
    for (int32_t t = 0; t < cube.k; ++t) {
      row.pos += cube.at(d, t, Polarity::Positive);
      row.neg += cube.at(d, t, Polarity::Negative);
      row.neu += cube.at(d, t, Polarity::Neutral);
    }
    rows.push_back(row);
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

void write_cube_csv(const SentimentCube& cube, const std::string& path,
                    bool ratios) {
  FILE* f = open_or_throw(path);
  std::fputs("day,topic,pos,neg,neu\n", f);
  int64_t empty_cells = 0;
  for (size_t d = 0; d < cube.days.size(); ++d) {
    const std::string day = to_string(cube.days[d]);
    for (int32_t t = 0; t < cube.k; ++t) {
      const int64_t pos = cube.at(d, t, Polarity::Positive);
      const int64_t neg = cube.at(d, t, Polarity::Negative);
      const int64_t neu = cube.at(d, t, Polarity::Neutral);
      if (!ratios) {
        std::fprintf(f, "%s,%d,%lld,%lld,%lld\n", day.c_str(), t,
                     static_cast<long long>(pos), static_cast<long long>(neg),
                     static_cast<long long>(neu));
        continue;
      }
      const int64_t total = pos + neg + neu;
      if (total == 0) {
        empty_cells += 1;
        std::fprintf(f, "%s,%d,0,0,0\n", day.c_str(), t);
      } else {
        const double den = static_cast<double>(total);
        std::fprintf(f, "%s,%d,%.17g,%.17g,%.17g\n", day.c_str(), t, pos / den,
                     neg / den, neu / den);
      }
    }
  }
  std::fclose(f);
  if (empty_cells > 0)
    std::fprintf(stderr,
                 "warning: %lld day-topic cells had no documents; "
                 "ratios written as zeros\n",
                 static_cast<long long>(empty_cells));
}

void write_overall_csv(const SentimentCube& cube, const std::string& path) {
  FILE* f = open_or_throw(path);
  std::fputs("day,pos,neg,neu\n", f);
  for (const auto& row : daily_overall(cube))
    std::fprintf(f, "%s,%lld,%lld,%lld\n", to_string(row.day).c_str(),
                 static_cast<long long>(row.pos),
                 static_cast<long long>(row.neg),
                 static_cast<long long>(row.neu));
  std::fclose(f);
}

}  // namespace daypulse
