#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "daypulse/corpus.hpp"
#include "doctest.h"

using namespace daypulse;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path);
  out << content;
  return path.string();
}

std::string jsonl_line(const std::string& id, const std::string& ts,
                       const std::string& lang, const std::string& text) {
  return "{\"id\":\"" + id + "\",\"timestamp\":\"" + ts + "\",\"lang\":\"" +
         lang + "\",\"text\":\"" + text + "\"}\n";
}

}  // namespace

TEST_CASE("date arithmetic round-trips and formats") {
  CHECK(parse_date("2020-04-01").to_string() == "2020-04-01");
  CHECK(parse_date("2020-02-29") == CivilDate{2020, 2, 29});
  CHECK_THROWS_AS(parse_date("2019-02-29"), std::invalid_argument);
  CHECK_THROWS_AS(parse_date("2020-13-01"), std::invalid_argument);
  CHECK_THROWS_AS(parse_date("20200401"), std::invalid_argument);

  for (int64_t days : {-1000000L, -1L, 0L, 1L, 18353L, 1000000L}) {
    CHECK(days_from_civil(civil_from_days(days)) == days);
  }
  CHECK(days_from_civil({1970, 1, 1}) == 0);
  CHECK(civil_from_days(18353) == CivilDate{2020, 4, 1});
}

TEST_CASE("timestamps parse ISO-8601 instants with offsets") {
  CHECK(parse_timestamp("1970-01-01T00:00:00Z") == 0);
  CHECK(parse_timestamp("2020-04-01T12:30:00Z") == 1585744200);
  CHECK(parse_timestamp("2020-04-01 12:30:00Z") == 1585744200);
  CHECK(parse_timestamp("2020-04-01T14:30:00+02:00") == 1585744200);
  CHECK(parse_timestamp("2020-04-01T07:30:00-05:00") == 1585744200);
  CHECK_FALSE(parse_timestamp("not-a-time").has_value());
  CHECK_FALSE(parse_timestamp("2020-04-01").has_value());
  CHECK_FALSE(parse_timestamp("2020-04-01T25:00:00Z").has_value());

  CHECK(parse_utc_offset("Z") == 0);
  CHECK(parse_utc_offset("+02:00") == 7200);
  CHECK(parse_utc_offset("-05:30") == -19800);
  CHECK_THROWS(parse_utc_offset("nonsense"));
}

TEST_CASE("jsonl loader returns records in file order") {
  std::string content = jsonl_line("a", "2020-04-01T00:00:00Z", "en", "one") +
                        jsonl_line("b", "2020-04-01T01:00:00Z", "es", "two") +
                        jsonl_line("c", "2020-04-01T02:00:00Z", "en", "three");
  auto path = write_temp("load_ok.jsonl", content);
  LoadStats stats;
  auto docs = load_records(path, RecordFormat::Jsonl, &stats);
  REQUIRE(docs.size() == 3);
  CHECK(docs[0].id == "a");
  CHECK(docs[1].id == "b");
  CHECK(docs[2].id == "c");
  CHECK(docs[0].text == "one");
  CHECK(stats.lines == 3);
  CHECK(stats.skipped == 0);
  CHECK(stats.duplicates == 0);
}

TEST_CASE("malformed lines are skipped and counted") {
  std::string content =
      jsonl_line("a", "2020-04-01T00:00:00Z", "en", "one") +
      "{\"id\":\"b\",\"timestamp\":\"2020-04-01T00:00:00Z\",\"lang\":\"en\"}\n" +
      jsonl_line("c", "2020-04-01T02:00:00Z", "en", "three");
  auto path = write_temp("load_skip.jsonl", content);
  LoadStats stats;
  auto docs = load_records(path, RecordFormat::Jsonl, &stats);
  CHECK(docs.size() == 2);
  CHECK(stats.skipped == 1);
}

TEST_CASE("empty file yields empty list without warnings") {
  auto path = write_temp("load_empty.jsonl", "");
  LoadStats stats;
  auto docs = load_records(path, RecordFormat::Jsonl, &stats);
  CHECK(docs.empty());
  CHECK(stats.lines == 0);
  CHECK(stats.skipped == 0);
}

TEST_CASE("unreadable file and heavily malformed input are fatal") {
  CHECK_THROWS(load_records("/nonexistent/nowhere.jsonl", RecordFormat::Jsonl,
                            nullptr));

  // 21 rows, 3 malformed (>10%): over the threshold once past the small-file
  // exemption
  std::string content;
  for (int i = 0; i < 18; ++i)
    content += jsonl_line("id" + std::to_string(i), "2020-04-01T00:00:00Z",
                          "en", "text");
  content += "garbage\ngarbage\ngarbage\n";
  auto path = write_temp("load_fatal.jsonl", content);
  CHECK_THROWS(load_records(path, RecordFormat::Jsonl, nullptr));

  // same ratio under 20 rows is tolerated
  content = jsonl_line("a", "2020-04-01T00:00:00Z", "en", "text") + "garbage\n";
  path = write_temp("load_small.jsonl", content);
  LoadStats stats;
  auto docs = load_records(path, RecordFormat::Jsonl, &stats);
  CHECK(docs.size() == 1);
  CHECK(stats.skipped == 1);
}

TEST_CASE("duplicate ids keep the last record") {
  std::string content = jsonl_line("a", "2020-04-01T00:00:00Z", "en", "old") +
                        jsonl_line("b", "2020-04-01T00:00:00Z", "en", "keep") +
                        jsonl_line("a", "2020-04-01T01:00:00Z", "en", "new");
  auto path = write_temp("load_dup.jsonl", content);
  LoadStats stats;
  auto docs = load_records(path, RecordFormat::Jsonl, &stats);
  REQUIRE(docs.size() == 2);
  CHECK(stats.duplicates == 1);
  bool found = false;
  for (const auto& d : docs) {
    if (d.id == "a") {
      CHECK(d.text == "new");
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("csv loader parses quoted fields") {
  std::string content =
      "id,timestamp,lang,text\n"
      "a,2020-04-01T00:00:00Z,en,\"hello, world\"\n"
      "b,2020-04-01T01:00:00Z,en,\"line with \"\"quotes\"\"\"\n";
  auto path = write_temp("load_ok.csv", content);
  LoadStats stats;
  auto docs = load_records(path, RecordFormat::Csv, &stats);
  REQUIRE(docs.size() == 2);
  CHECK(docs[0].text == "hello, world");
  CHECK(docs[1].text == "line with \"quotes\"");
}

TEST_CASE("language filter matches the primary subtag") {
  std::vector<RawDocument> docs = {
      {"a", 0, "en", ""}, {"b", 0, "es", ""}, {"c", 0, "en", ""},
      {"d", 0, "en-GB", ""}, {"e", 0, "EN", ""}, {"f", 0, "eng", ""},
  };
  auto kept = filter_language(docs, "en");
  REQUIRE(kept.size() == 4);
  CHECK(kept[0].id == "a");
  CHECK(kept[1].id == "c");
  CHECK(kept[2].id == "d");
  CHECK(kept[3].id == "e");

  auto twice = filter_language(kept, "en");
  CHECK(twice.size() == kept.size());
  CHECK(filter_language({}, "en").empty());
}

TEST_CASE("day slicing buckets by local calendar day") {
  int64_t day1 = *parse_timestamp("2020-04-01T10:00:00Z");
  int64_t day1b = *parse_timestamp("2020-04-01T23:00:00Z");
  int64_t day2 = *parse_timestamp("2020-04-02T00:30:00Z");
  std::vector<RawDocument> docs = {
      {"a", day1, "en", ""}, {"b", day1b, "en", ""}, {"c", day2, "en", ""}};

  auto sliced = slice_by_day(docs, parse_date("2020-04-01"),
                             parse_date("2020-04-02"), 0);
  REQUIRE(sliced.slices.size() == 2);
  CHECK(sliced.slices[0].date.to_string() == "2020-04-01");
  CHECK(sliced.slices[0].docs.size() == 2);
  CHECK(sliced.slices[1].docs.size() == 1);
  CHECK(sliced.dropped == 0);
}

TEST_CASE("offset moves late evening into the next local day") {
  // 23:59 UTC on Mar 31 is already Apr 1 at +10:00
  int64_t ts = *parse_timestamp("2020-03-31T23:59:00Z");
  std::vector<RawDocument> docs = {{"a", ts, "en", ""}};
  auto sliced = slice_by_day(docs, parse_date("2020-04-01"),
                             parse_date("2020-04-01"), 10 * 3600);
  REQUIRE(sliced.slices.size() == 1);
  CHECK(sliced.slices[0].docs.size() == 1);
  CHECK(sliced.dropped == 0);

  auto utc = slice_by_day(docs, parse_date("2020-04-01"),
                          parse_date("2020-04-01"), 0);
  CHECK(utc.slices[0].docs.empty());
  CHECK(utc.dropped == 1);
}

TEST_CASE("documents outside the window are dropped and counted") {
  int64_t before = *parse_timestamp("2020-03-31T12:00:00Z");
  int64_t inside = *parse_timestamp("2020-04-01T12:00:00Z");
  int64_t after = *parse_timestamp("2020-04-03T12:00:00Z");
  std::vector<RawDocument> docs = {
      {"a", before, "en", ""}, {"b", inside, "en", ""}, {"c", after, "en", ""}};
  auto sliced = slice_by_day(docs, parse_date("2020-04-01"),
                             parse_date("2020-04-02"), 0);
  CHECK(sliced.dropped == 2);

  int64_t kept = 0;
  for (const auto& s : sliced.slices) kept += (int64_t)s.docs.size();
  CHECK(kept + sliced.dropped == (int64_t)docs.size());

  CHECK_THROWS(slice_by_day(docs, parse_date("2020-04-02"),
                            parse_date("2020-04-01"), 0));
}

TEST_CASE("every kept document lands in exactly one slice") {
  std::vector<RawDocument> docs;
  for (int i = 0; i < 50; ++i) {
    int64_t ts = *parse_timestamp("2020-04-01T00:00:00Z") + i * 9000;
    docs.push_back({"d" + std::to_string(i), ts, "en", ""});
  }
  auto sliced = slice_by_day(docs, parse_date("2020-04-01"),
                             parse_date("2020-04-06"), 0);
  int64_t kept = 0;
  for (const auto& s : sliced.slices) kept += (int64_t)s.docs.size();
  CHECK(kept + sliced.dropped == (int64_t)docs.size());
  CHECK(sliced.slices.size() == 6);
}
