#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace daypulse {

// One ingested record. `text` is kept verbatim: the sentiment scorer runs
// on raw text, only the topic pipeline sees cleaned tokens.
struct RawDocument {
  std::string id;
  int64_t timestamp = 0;  // UTC epoch seconds
  std::string lang;       // BCP-47-ish tag, e.g. "en", "en-GB"
  std::string text;
};

// Calendar date (proleptic Gregorian).
struct CivilDate {
  int year = 1970;
  int month = 1;  // 1..12
  int day = 1;    // 1..31

  auto operator<=>(const CivilDate&) const = default;
  std::string to_string() const;  // YYYY-MM-DD
};

inline std::string to_string(const CivilDate& d) { return d.to_string(); }

int64_t days_from_civil(const CivilDate& d);
CivilDate civil_from_days(int64_t days);

// "YYYY-MM-DD" -> date; throws std::invalid_argument on bad input
CivilDate parse_date(const std::string& s);

// ISO-8601 instant: "YYYY-MM-DD[T ]HH:MM:SS[Z|+HH:MM|-HH:MM]".
// Returns epoch seconds, or nullopt if unparseable.
std::optional<int64_t> parse_timestamp(const std::string& s);

// "+HH:MM" / "-HH:MM" / "Z" -> offset seconds; throws on bad input
int parse_utc_offset(const std::string& s);

struct LoadStats {
  int64_t lines = 0;       // input lines/rows seen
  int64_t skipped = 0;     // malformed, dropped with a warning
  int64_t duplicates = 0;  // duplicate ids replaced (last record wins)
};

enum class RecordFormat { Jsonl, Csv };

// Reads records from a .jsonl or .csv file (fields id, timestamp, lang,
// text). Malformed rows are skipped and counted; more than 10% malformed
// is fatal, as is an unreadable file.
std::vector<RawDocument> load_records(const std::string& path,
                                      RecordFormat format, LoadStats* stats);

// Keeps records whose primary language subtag matches `keep`'s
// (case-insensitive), e.g. keep="en" matches "en-GB".
std::vector<RawDocument> filter_language(const std::vector<RawDocument>& docs,
                                         const std::string& keep);

struct DaySlice {
  CivilDate date;
  std::vector<RawDocument> docs;
};

struct SlicedCorpus {
  std::vector<DaySlice> slices;  // contiguous calendar days, ascending
  int tz_offset = 0;             // seconds east of UTC used for bucketing
  int64_t dropped = 0;           // docs outside the window
};

// Buckets documents into one slice per calendar day of
// [start, end] (inclusive), local to tz_offset. Docs outside the window
// are dropped and counted.
SlicedCorpus slice_by_day(const std::vector<RawDocument>& docs,
                          const CivilDate& start, const CivilDate& end,
                          int tz_offset);

}  // namespace daypulse
