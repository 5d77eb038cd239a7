#include "daypulse/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "daypulse/csv.hpp"
#include "json.hpp"

namespace daypulse {

std::string CivilDate::to_string() const {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
  return buf;
}

// Howard Hinnant's civil-days algorithm.
int64_t days_from_civil(const CivilDate& d) {
  int y = d.year;
  const int m = d.month;
  y -= m <= 2;
  const int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d.day - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<int64_t>(doe) - 719468;
}

CivilDate civil_from_days(int64_t z) {
  z += 719468;
  const int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const int64_t y = static_cast<int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned d = doy - (153 * mp + 2) / 5 + 1;
  const unsigned m = mp + (mp < 10 ? 3 : -9);
  return {static_cast<int>(y + (m <= 2)), static_cast<int>(m),
          static_cast<int>(d)};
}

namespace {

bool parse_int(const char* first, const char* last, int& out) {
  auto [p, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && p == last;
}

bool valid_date(const CivilDate& d) {
  if (d.month < 1 || d.month > 12 || d.day < 1 || d.day > 31) return false;
  return civil_from_days(days_from_civil(d)) == d;
}

}  // namespace

CivilDate parse_date(const std::string& s) {
  CivilDate d;
  if (s.size() != 10 || s[4] != '-' || s[7] != '-' ||
      !parse_int(s.data(), s.data() + 4, d.year) ||
      !parse_int(s.data() + 5, s.data() + 7, d.month) ||
      !parse_int(s.data() + 8, s.data() + 10, d.day) || !valid_date(d)) {
    throw std::invalid_argument("bad date: '" + s + "' (want YYYY-MM-DD)");
  }
  return d;
}

int parse_utc_offset(const std::string& s) {
  if (s == "Z" || s == "z" || s == "+00:00" || s == "-00:00") return 0;
  int h = 0, m = 0;
  if (s.size() == 6 && (s[0] == '+' || s[0] == '-') && s[3] == ':' &&
      parse_int(s.data() + 1, s.data() + 3, h) &&
      parse_int(s.data() + 4, s.data() + 6, m) && h <= 14 && m <= 59) {
    int off = h * 3600 + m * 60;
    return s[0] == '-' ? -off : off;
  }
  throw std::invalid_argument("bad UTC offset: '" + s + "' (want +HH:MM)");
}

std::optional<int64_t> parse_timestamp(const std::string& s) {
  // date part
  if (s.size() < 19) return std::nullopt;
  CivilDate d;
  if (s[4] != '-' || s[7] != '-' ||
      !parse_int(s.data(), s.data() + 4, d.year) ||
      !parse_int(s.data() + 5, s.data() + 7, d.month) ||
      !parse_int(s.data() + 8, s.data() + 10, d.day) || !valid_date(d)) {
    return std::nullopt;
  }
  if (s[10] != 'T' && s[10] != 't' && s[10] != ' ') return std::nullopt;
  int hh = 0, mm = 0, ss = 0;
  if (s[13] != ':' || s[16] != ':' ||
      !parse_int(s.data() + 11, s.data() + 13, hh) ||
      !parse_int(s.data() + 14, s.data() + 16, mm) ||
      !parse_int(s.data() + 17, s.data() + 19, ss) || hh > 23 || mm > 59 ||
      ss > 60) {
    return std::nullopt;
  }
  int64_t t = days_from_civil(d) * 86400 + hh * 3600 + mm * 60 + ss;
  std::string tail = s.substr(19);
  if (tail.empty()) return t;  // assume UTC
  try {
    return t - parse_utc_offset(tail);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

namespace {

// nullopt when the row is malformed
std::optional<RawDocument> make_record(std::string id, std::string ts,
                                       std::string lang, std::string text) {
  if (id.empty() || text.empty()) return std::nullopt;
  auto t = parse_timestamp(ts);
  if (!t) return std::nullopt;
  RawDocument doc;
  doc.id = std::move(id);
  doc.timestamp = *t;
  doc.lang = std::move(lang);
  doc.text = std::move(text);
  return doc;
}

std::optional<RawDocument> parse_json_line(const std::string& line) {
  auto j = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (!j.is_object()) return std::nullopt;
  auto str = [&](const char* key) -> std::optional<std::string> {
    auto it = j.find(key);
    if (it == j.end()) return std::nullopt;
    if (it->is_string()) return it->get<std::string>();
    if (key == std::string("id") && it->is_number_integer())
      return std::to_string(it->get<int64_t>());
    return std::nullopt;
  };
  auto id = str("id");
  auto ts = str("timestamp");
  auto lang = str("lang");
  auto text = str("text");
  if (!id || !ts || !lang || !text) return std::nullopt;
  return make_record(*id, *ts, *lang, *text);
}

}  // namespace

std::vector<RawDocument> load_records(const std::string& path,
                                      RecordFormat format, LoadStats* stats) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open input file: " + path);

  LoadStats local;
  std::vector<RawDocument> docs;
  std::unordered_map<std::string, std::size_t> seen;  // id -> index in docs

  auto add = [&](std::optional<RawDocument> doc) {
    if (!doc) {
      ++local.skipped;
      return;
    }
    auto it = seen.find(doc->id);
    if (it != seen.end()) {
      // last record wins, earlier occurrence removed
      ++local.duplicates;
      docs.erase(docs.begin() + static_cast<std::ptrdiff_t>(it->second));
      for (auto& [k, v] : seen) {
        if (v > it->second) --v;
      }
      seen.erase(it);
    }
    seen.emplace(doc->id, docs.size());
    docs.push_back(std::move(*doc));
  };

  if (format == RecordFormat::Jsonl) {
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      ++local.lines;
      add(parse_json_line(line));
    }
  } else {
    CsvReader reader(in);
    auto header = reader.next();
    if (!header) throw std::runtime_error("empty CSV header in " + path);
    int col_id = -1, col_ts = -1, col_lang = -1, col_text = -1;
    for (int i = 0; i < static_cast<int>(header->size()); ++i) {
      const std::string& h = (*header)[i];
      if (h == "id") col_id = i;
      else if (h == "timestamp") col_ts = i;
      else if (h == "lang") col_lang = i;
      else if (h == "text") col_text = i;
    }
    if (col_id < 0 || col_ts < 0 || col_lang < 0 || col_text < 0) {
      throw std::runtime_error(
          "CSV header must name id,timestamp,lang,text columns: " + path);
    }
    while (auto row = reader.next()) {
      if (row->size() == 1 && (*row)[0].empty()) continue;  // blank line
      ++local.lines;
      int n = static_cast<int>(row->size());
      if (col_id >= n || col_ts >= n || col_lang >= n || col_text >= n) {
        ++local.skipped;
        continue;
      }
      add(make_record((*row)[col_id], (*row)[col_ts], (*row)[col_lang],
                      (*row)[col_text]));
    }
  }

  // The malformed-fraction gate is meant to catch systematically broken
  // inputs; a toy file with one bad row must still load, so small files
  // are exempt.
  if (local.lines >= 20 && local.skipped * 10 > local.lines) {
    throw std::runtime_error("more than 10% malformed records in " + path +
                             " (" + std::to_string(local.skipped) + "/" +
                             std::to_string(local.lines) + ")");
  }
  if (stats) *stats = local;
  return docs;
}

namespace {

std::string primary_subtag(const std::string& tag) {
  std::string out;
  for (char c : tag) {
    if (c == '-' || c == '_') break;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

}  // namespace

std::vector<RawDocument> filter_language(const std::vector<RawDocument>& docs,
                                         const std::string& keep) {
  if (keep.empty()) throw std::invalid_argument("language tag must be nonempty");
  const std::string want = primary_subtag(keep);
  std::vector<RawDocument> out;
  for (const auto& d : docs) {
    if (primary_subtag(d.lang) == want) out.push_back(d);
  }
  return out;
}

SlicedCorpus slice_by_day(const std::vector<RawDocument>& docs,
                          const CivilDate& start, const CivilDate& end,
                          int tz_offset) {
  const int64_t first = days_from_civil(start);
  const int64_t last = days_from_civil(end);
  if (first > last) throw std::invalid_argument("window start is after end");

  SlicedCorpus out;
  out.tz_offset = tz_offset;
  out.slices.resize(static_cast<std::size_t>(last - first + 1));
  for (int64_t day = first; day <= last; ++day) {
    out.slices[static_cast<std::size_t>(day - first)].date =
        civil_from_days(day);
  }
  for (const auto& d : docs) {
    // floor division: local day index of the timestamp
    int64_t local = d.timestamp + tz_offset;
    int64_t day = local >= 0 ? local / 86400 : (local - 86399) / 86400;
    if (day < first || day > last) {
      ++out.dropped;
      continue;
    }
    out.slices[static_cast<std::size_t>(day - first)].docs.push_back(d);
  }
  return out;
}

}  // namespace daypulse
