#include "daypulse/pipeline.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <vector>

#include "daypulse/analytics.hpp"
#include "daypulse/corpus.hpp"
#include "daypulse/csv.hpp"
#include "daypulse/dtm.hpp"
#include "daypulse/lda.hpp"
#include "daypulse/preprocess.hpp"
#include "daypulse/sentiment.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace daypulse {

namespace {

int64_t parse_i64(const std::string& s) {
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(s.c_str(), &end, 10);
  if (errno != 0 || end != s.c_str() + s.size() || s.empty())
    throw std::invalid_argument("not an integer: '" + s + "'");
  return v;
}

int parse_i32(const std::string& s) {
  const int64_t v = parse_i64(s);
  if (v < INT32_MIN || v > INT32_MAX)
    throw std::invalid_argument("integer out of range: '" + s + "'");
  return static_cast<int>(v);
}

uint64_t parse_u64(const std::string& s) {
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
  if (errno != 0 || end != s.c_str() + s.size() || s.empty() || s[0] == '-')
    throw std::invalid_argument("not an unsigned integer: '" + s + "'");
  return v;
}

double parse_f64(const std::string& s) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (errno != 0 || end != s.c_str() + s.size() || s.empty())
    throw std::invalid_argument("not a number: '" + s + "'");
  return v;
}

bool parse_flag(const std::string& s) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw std::invalid_argument("not a boolean: '" + s + "'");
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

RecordFormat resolve_format(const PipelineConfig& cfg) {
  if (cfg.format == "jsonl") return RecordFormat::Jsonl;
  if (cfg.format == "csv") return RecordFormat::Csv;
  if (cfg.format == "auto") {
    const std::string ext = fs::path(cfg.input).extension().string();
    if (ext == ".jsonl" || ext == ".ndjson" || ext == ".json")
      return RecordFormat::Jsonl;
    if (ext == ".csv") return RecordFormat::Csv;
    throw std::invalid_argument("cannot infer format from '" + cfg.input +
                                "'; set format=jsonl or format=csv");
  }
  throw std::invalid_argument("unknown format '" + cfg.format + "'");
}

std::string format_instant(int64_t epoch_seconds) {
  const int64_t days = epoch_seconds >= 0
                           ? epoch_seconds / 86400
                           : (epoch_seconds - 86399) / 86400;
  const int64_t rem = epoch_seconds - days * 86400;
  const CivilDate d = civil_from_days(days);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02lld:%02lld:%02lldZ",
                d.year, d.month, d.day, static_cast<long long>(rem / 3600),
                static_cast<long long>(rem / 60 % 60),
                static_cast<long long>(rem % 60));
  return buf;
}

fs::path manifest_path(const PipelineConfig& cfg) {
  return fs::path(cfg.out_dir) / "manifest.json";
}

json load_manifest(const PipelineConfig& cfg) {
  std::ifstream in(manifest_path(cfg));
  if (!in.is_open()) return json::object();
  json m = json::parse(in, nullptr, true);
  if (!m.is_object()) throw std::runtime_error("manifest is not a JSON object");
  return m;
}

json require_manifest(const PipelineConfig& cfg, const char* section,
                      const char* needed_by) {
  json m = load_manifest(cfg);
  if (!m.contains(section))
    throw std::invalid_argument(std::string("run `") + needed_by +
                                "` first: manifest has no " + section +
                                " stage");
  return m;
}

void save_manifest(const PipelineConfig& cfg, const json& m) {
  std::ofstream out(manifest_path(cfg), std::ios::binary | std::ios::trunc);
  if (!out.is_open())
    throw std::runtime_error("cannot write " + manifest_path(cfg).string());
  out << m.dump(2) << "\n";
}

std::vector<CivilDate> manifest_dates(const json& m) {
  const CivilDate start = parse_date(m.at("ingest").at("start_date"));
  const CivilDate end = parse_date(m.at("ingest").at("end_date"));
  std::vector<CivilDate> dates;
  for (int64_t d = days_from_civil(start); d <= days_from_civil(end); ++d)
    dates.push_back(civil_from_days(d));
  return dates;
}

struct DayDoc {
  std::string id;
  std::string text;
  size_t day = 0;  // index into the window's date list
};

std::vector<DayDoc> read_day_files(const PipelineConfig& cfg,
                                   const std::vector<CivilDate>& dates) {
  std::vector<DayDoc> docs;
  for (size_t t = 0; t < dates.size(); ++t) {
    const fs::path path =
        fs::path(cfg.out_dir) / "days" / (to_string(dates[t]) + ".jsonl");
    std::ifstream in(path);
    if (!in.is_open())
      throw std::runtime_error("missing day file " + path.string() +
                               "; run `ingest` first");
    std::string line;
    while (std::getline(in, line)) {
      if (trim(line).empty()) continue;
      json rec = json::parse(line, nullptr, true);
      docs.push_back({rec.at("id").get<std::string>(),
                      rec.at("text").get<std::string>(), t});
    }
  }
  return docs;
}

struct PrepDoc {
  BowDoc bow;
  size_t day = 0;
};

void write_bow_csv(const std::vector<PrepDoc>& docs,
                   const std::vector<CivilDate>& dates, const fs::path& path,
                   int64_t* rows_out) {
  FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw std::runtime_error("cannot open for writing: " + path.string());
  std::fputs("doc_id,day,word_id,count\n", f);
  int64_t rows = 0;
  for (const auto& doc : docs) {
    const std::string id = csv_escape(doc.bow.doc_id);
    const std::string day = to_string(dates[doc.day]);
    for (const auto& [w, c] : doc.bow.counts) {
      std::fprintf(f, "%s,%s,%d,%d\n", id.c_str(), day.c_str(), w, c);
      ++rows;
    }
  }
  std::fclose(f);
  if (rows_out) *rows_out = rows;
}

std::vector<PrepDoc> read_bow_csv(const fs::path& path,
                                  const std::vector<CivilDate>& dates) {
  std::map<CivilDate, size_t> day_index;
  for (size_t i = 0; i < dates.size(); ++i) day_index.emplace(dates[i], i);

  CsvReader reader(path.string());
  auto header = reader.next();
  if (!header || header->size() != 4 || (*header)[0] != "doc_id")
    throw std::runtime_error("bad bag-of-words header in " + path.string());

  std::vector<PrepDoc> docs;
  while (auto row = reader.next()) {
    if (row->size() != 4)
      throw std::runtime_error("bad bag-of-words row in " + path.string());
    const std::string& id = (*row)[0];
    auto day = day_index.find(parse_date((*row)[1]));
    if (day == day_index.end())
      throw std::runtime_error("bag-of-words day outside the study window");
    if (docs.empty() || docs.back().bow.doc_id != id ||
        docs.back().day != day->second)
      docs.push_back({BowDoc{id, {}}, day->second});
    docs.back().bow.counts.emplace_back(parse_i32((*row)[2]),
                                        parse_i32((*row)[3]));
  }
  return docs;
}

std::vector<Assignment> read_assignments_csv(const fs::path& path) {
  CsvReader reader(path.string());
  auto header = reader.next();
  if (!header || header->size() != 3 || (*header)[0] != "doc_id")
    throw std::runtime_error("bad assignment header in " + path.string());
  std::vector<Assignment> rows;
  while (auto row = reader.next()) {
    if (row->size() != 3)
      throw std::runtime_error("bad assignment row in " + path.string());
    rows.push_back({(*row)[0], parse_date((*row)[1]), parse_i32((*row)[2])});
  }
  return rows;
}

std::vector<int> parse_grid(const std::string& text) {
  std::vector<int> grid;
  std::string item;
  std::stringstream ss(text);
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) grid.push_back(parse_i32(item));
  }
  return grid;
}

LdaConfig lda_template(const PipelineConfig& cfg) {
  LdaConfig lda;
  lda.alpha = cfg.alpha;
  lda.eta = cfg.eta;
  lda.iterations = cfg.iterations;
  lda.burn_in = cfg.burn_in;
  lda.seed = cfg.seed;
  return lda;
}

int guard(const char* command, const std::function<int()>& body) {
  try {
    return body();
  } catch (const IntegrityError& e) {
    std::fprintf(stderr, "%s: integrity error: %s\n", command, e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "%s: error: %s\n", command, e.what());
    return 2;
  }
}

}  // namespace

void set_config_key(PipelineConfig& cfg, const std::string& key,
                    const std::string& value) {
  if (key == "input") cfg.input = value;
  else if (key == "format") cfg.format = value;
  else if (key == "lang") cfg.lang = value;
  else if (key == "start_date") cfg.start_date = value;
  else if (key == "end_date") cfg.end_date = value;
  else if (key == "timezone") cfg.timezone = value;
  else if (key == "stopwords") cfg.stopwords = value;
  else if (key == "lemma_exceptions") cfg.lemma_exceptions = value;
  else if (key == "min_doc_len") cfg.min_doc_len = parse_i32(value);
  else if (key == "min_df") cfg.min_df = parse_i32(value);
  else if (key == "max_df_ratio") cfg.max_df_ratio = parse_f64(value);
  else if (key == "phrase_min_count") cfg.phrase_min_count = parse_i32(value);
  else if (key == "phrase_threshold") cfg.phrase_threshold = parse_f64(value);
  else if (key == "k") cfg.k = parse_i32(value);
  else if (key == "k_grid") cfg.k_grid = value;
  else if (key == "alpha") cfg.alpha = parse_f64(value);
  else if (key == "eta") cfg.eta = parse_f64(value);
  else if (key == "iterations") cfg.iterations = parse_i32(value);
  else if (key == "burn_in") cfg.burn_in = parse_i32(value);
  else if (key == "kappa") cfg.kappa = parse_f64(value);
  else if (key == "rho") cfg.rho = parse_f64(value);
  else if (key == "seed") cfg.seed = parse_u64(value);
  else if (key == "topn") cfg.topn = parse_i32(value);
  else if (key == "topic") cfg.topic = parse_i32(value);
  else if (key == "lexicon") cfg.lexicon = value;
  else if (key == "out_dir") cfg.out_dir = value;
  else if (key == "verbose") cfg.verbose = parse_flag(value);
  else throw std::invalid_argument("unknown config key '" + key + "'");
}

PipelineConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in.is_open()) throw std::runtime_error("cannot read config " + path);
  PipelineConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": expected key=value");
    set_config_key(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

int cmd_ingest(const PipelineConfig& cfg) {
  return guard("ingest", [&]() {
    if (cfg.input.empty()) throw std::invalid_argument("input is required");
    if (cfg.start_date.empty() || cfg.end_date.empty())
      throw std::invalid_argument("start_date and end_date are required");

    LoadStats stats;
    const auto docs = load_records(cfg.input, resolve_format(cfg), &stats);
    if (docs.empty()) throw std::invalid_argument("no documents");

    const auto english = filter_language(docs, cfg.lang);
    const auto sliced = slice_by_day(english, parse_date(cfg.start_date),
                                     parse_date(cfg.end_date),
                                     parse_utc_offset(cfg.timezone));
    int64_t kept = 0;
    for (const auto& slice : sliced.slices)
      kept += static_cast<int64_t>(slice.docs.size());
    if (kept == 0)
      throw std::invalid_argument("no documents in the study window");

    fs::create_directories(fs::path(cfg.out_dir) / "days");
    json manifest = load_manifest(cfg);
    for (const auto& slice : sliced.slices) {
      const std::string rel = "days/" + to_string(slice.date) + ".jsonl";
      std::ofstream out(fs::path(cfg.out_dir) / rel,
                        std::ios::binary | std::ios::trunc);
      if (!out.is_open()) throw std::runtime_error("cannot write " + rel);
      for (const auto& doc : slice.docs) {
        json rec{{"id", doc.id},
                 {"lang", doc.lang},
                 {"text", doc.text},
                 {"timestamp", format_instant(doc.timestamp)}};
        out << rec.dump() << "\n";
      }
      manifest["files"][rel] = slice.docs.size();
      if (cfg.verbose)
        std::fprintf(stderr, "%s: %zu documents\n",
                     to_string(slice.date).c_str(), slice.docs.size());
    }

    manifest["ingest"] = {{"raw", stats.lines},
                          {"skipped", stats.skipped},
                          {"duplicates", stats.duplicates},
                          {"english", english.size()},
                          {"dropped", sliced.dropped},
                          {"kept", kept},
                          {"input", fs::path(cfg.input).filename().string()},
                          {"lang", cfg.lang},
                          {"start_date", cfg.start_date},
                          {"end_date", cfg.end_date},
                          {"timezone", cfg.timezone}};
    save_manifest(cfg, manifest);
    std::fprintf(stderr, "skipped=%lld dropped=%lld duplicates=%lld\n",
                 static_cast<long long>(stats.skipped),
                 static_cast<long long>(sliced.dropped),
                 static_cast<long long>(stats.duplicates));
    return 0;
  });
}

int cmd_preprocess(const PipelineConfig& cfg) {
  return guard("preprocess", [&]() {
    json manifest = require_manifest(cfg, "ingest", "ingest");
    const auto dates = manifest_dates(manifest);
    const auto raw = read_day_files(cfg, dates);

    StopwordSet stopwords;
    if (cfg.stopwords.empty())
      std::fprintf(stderr, "warning: no stopword list configured\n");
    else
      stopwords = load_stopwords(cfg.stopwords);

    Lemmatizer lemmatizer;
    if (!cfg.lemma_exceptions.empty())
      lemmatizer = Lemmatizer::from_file(cfg.lemma_exceptions);

    std::vector<TokenDoc> token_docs;
    token_docs.reserve(raw.size());
    for (const auto& doc : raw) {
      TokenDoc td{doc.id, tokenize(doc.text, stopwords)};
      for (auto& token : td.tokens) token = lemmatizer.lemmatize(token);
      token_docs.push_back(std::move(td));
    }

    const PhraseModel phrases =
        fit_phrases(token_docs, cfg.phrase_min_count, cfg.phrase_threshold);
    for (auto& doc : token_docs) doc = apply_phrases(phrases, doc);

    const Vocabulary vocab =
        build_vocab(token_docs, cfg.min_df, cfg.max_df_ratio);

    std::vector<PrepDoc> kept;
    int64_t dropped = 0;
    for (size_t i = 0; i < token_docs.size(); ++i) {
      auto bow = to_bow(token_docs[i], vocab, cfg.min_doc_len);
      if (bow) kept.push_back({std::move(*bow), raw[i].day});
      else ++dropped;
    }

    fs::create_directories(cfg.out_dir);
    vocab.export_csv((fs::path(cfg.out_dir) / "vocab.csv").string());
    int64_t bow_rows = 0;
    write_bow_csv(kept, dates, fs::path(cfg.out_dir) / "bow.csv", &bow_rows);

    manifest["files"]["vocab.csv"] = vocab.size();
    manifest["files"]["bow.csv"] = bow_rows;
    manifest["preprocess"] = {{"documents", kept.size()},
                              {"rejected", dropped},
                              {"vocabulary", vocab.size()},
                              {"phrase_pairs", phrases.scores().size()},
                              {"min_doc_len", cfg.min_doc_len},
                              {"min_df", cfg.min_df},
                              {"max_df_ratio", cfg.max_df_ratio},
                              {"phrase_min_count", cfg.phrase_min_count},
                              {"phrase_threshold", cfg.phrase_threshold}};
    save_manifest(cfg, manifest);
    std::fprintf(stderr, "skipped=0 dropped=%lld duplicates=0\n",
                 static_cast<long long>(dropped));
    return 0;
  });
}

int cmd_select_k(const PipelineConfig& cfg) {
  return guard("select-k", [&]() {
    json manifest = require_manifest(cfg, "preprocess", "preprocess");
    const auto dates = manifest_dates(manifest);
    const Vocabulary vocab =
        Vocabulary::import_csv((fs::path(cfg.out_dir) / "vocab.csv").string());
    const auto docs = read_bow_csv(fs::path(cfg.out_dir) / "bow.csv", dates);

    std::vector<BowDoc> first_day;
    for (const auto& doc : docs)
      if (doc.day == 0) first_day.push_back(doc.bow);
    if (first_day.empty())
      throw std::invalid_argument("first day has no documents");

    const auto grid = parse_grid(cfg.k_grid);
    if (grid.empty()) throw std::invalid_argument("k_grid is empty");

    const auto result =
        select_k(first_day, vocab.size(), grid, lda_template(cfg), cfg.topn);
    write_coherence_csv(result,
                        (fs::path(cfg.out_dir) / "coherence.csv").string());

    manifest["files"]["coherence.csv"] = result.curve.size();
    manifest["select_k"] = {{"chosen_k", result.best_k},
                            {"grid", cfg.k_grid},
                            {"topn", cfg.topn}};
    save_manifest(cfg, manifest);
    std::printf("%d\n", result.best_k);
    return 0;
  });
}

int cmd_fit(const PipelineConfig& cfg) {
  return guard("fit", [&]() {
    json manifest = require_manifest(cfg, "preprocess", "preprocess");
    const auto dates = manifest_dates(manifest);
    const Vocabulary vocab =
        Vocabulary::import_csv((fs::path(cfg.out_dir) / "vocab.csv").string());
    const auto docs = read_bow_csv(fs::path(cfg.out_dir) / "bow.csv", dates);

    int k = cfg.k;
    if (k == 0) {
      if (!manifest.contains("select_k"))
        throw std::invalid_argument("k=0 needs a prior `select-k` run");
      k = manifest["select_k"]["chosen_k"].get<int>();
    }

    std::vector<BowSlice> slices(dates.size());
    for (size_t t = 0; t < dates.size(); ++t) slices[t].date = dates[t];
    for (const auto& doc : docs) slices[doc.day].docs.push_back(doc.bow);

    DtmConfig dc;
    dc.k = k;
    dc.kappa = cfg.kappa;
    dc.rho = cfg.rho;
    dc.lda = lda_template(cfg);
    const DtmModel model = fit_dtm(slices, vocab.size(), dc);

    const fs::path model_dir = fs::path(cfg.out_dir) / "model";
    fs::create_directories(model_dir);
    for (size_t t = 0; t < model.slices.size(); ++t) {
      const std::string day = to_string(model.dates[t]);
      write_phi_csv(model.slices[t].phi,
                    (model_dir / ("phi_" + day + ".csv")).string());
      write_theta_csv(model.slices[t],
                      (model_dir / ("theta_" + day + ".csv")).string());
      manifest["files"]["model/phi_" + day + ".csv"] =
          static_cast<int64_t>(k) * vocab.size();
      manifest["files"]["model/theta_" + day + ".csv"] =
          static_cast<int64_t>(model.slices[t].theta.rows()) * k;
    }

    const auto assignments = assign_topics(model);
    write_assignments_csv(assignments,
                          (fs::path(cfg.out_dir) / "assignments.csv").string());
    const auto trajectory = topic_trajectory(model, cfg.topn);
    write_trajectory_csv(trajectory, vocab,
                         (fs::path(cfg.out_dir) / "trajectory.csv").string());
    const auto top = top_topics_per_slice(model, k);
    write_top_topics_csv(top,
                         (fs::path(cfg.out_dir) / "top_topics.csv").string());

    json copied = json::array();
    for (bool c : model.copied) copied.push_back(c);
    json sidecar{{"k", k},
                 {"alpha", LdaConfig{k, cfg.alpha}.effective_alpha()},
                 {"eta", cfg.eta},
                 {"iterations", cfg.iterations},
                 {"burn_in", cfg.burn_in},
                 {"kappa", cfg.kappa},
                 {"rho", cfg.rho},
                 {"seed", cfg.seed},
                 {"vocab_size", vocab.size()},
                 {"start_date", to_string(dates.front())},
                 {"end_date", to_string(dates.back())},
                 {"copied", copied}};
    std::ofstream side(model_dir / "model.json",
                       std::ios::binary | std::ios::trunc);
    side << sidecar.dump(2) << "\n";

    manifest["files"]["assignments.csv"] = assignments.size();
    manifest["files"]["trajectory.csv"] = trajectory.size();
    manifest["files"]["top_topics.csv"] = top.size();
    manifest["files"]["model/model.json"] = 1;
    manifest["fit"] = {{"k", k},
                       {"kappa", cfg.kappa},
                       {"rho", cfg.rho},
                       {"iterations", cfg.iterations},
                       {"burn_in", cfg.burn_in},
                       {"seed", cfg.seed},
                       {"documents", docs.size()},
                       {"days", dates.size()}};
    save_manifest(cfg, manifest);
    if (cfg.verbose)
      std::fprintf(stderr, "fit %d topics over %zu days\n", k, dates.size());
    return 0;
  });
}

int cmd_sentiment(const PipelineConfig& cfg) {
  return guard("sentiment", [&]() {
    json manifest = require_manifest(cfg, "ingest", "ingest");
    const auto dates = manifest_dates(manifest);
    const auto docs = read_day_files(cfg, dates);
    if (cfg.lexicon.empty()) throw std::invalid_argument("lexicon is required");

    LexiconStats stats;
    const Lexicon lexicon = load_lexicon(cfg.lexicon, &stats);
    std::map<std::string, SentimentScore> scores;
    for (const auto& doc : docs)
      scores[doc.id] = score_text(lexicon, doc.text);

    write_polarity_csv(scores,
                       (fs::path(cfg.out_dir) / "polarity.csv").string());
    manifest["files"]["polarity.csv"] = scores.size();
    manifest["sentiment"] = {{"documents", scores.size()},
                             {"lexicon_entries", stats.entries},
                             {"lexicon", fs::path(cfg.lexicon).filename().string()}};
    save_manifest(cfg, manifest);
    if (cfg.verbose)
      std::fprintf(stderr, "scored %zu documents\n", scores.size());
    return 0;
  });
}

int cmd_report(const PipelineConfig& cfg) {
  return guard("report", [&]() {
    json manifest = require_manifest(cfg, "fit", "fit");
    if (!manifest.contains("sentiment"))
      throw std::invalid_argument("run `sentiment` first");
    const auto dates = manifest_dates(manifest);
    const int k = manifest["fit"]["k"].get<int>();

    const auto assignments =
        read_assignments_csv(fs::path(cfg.out_dir) / "assignments.csv");
    const auto scores =
        read_polarity_csv((fs::path(cfg.out_dir) / "polarity.csv").string());

    int64_t unscored = 0;
    std::set<std::string> assigned_ids;
    for (const auto& a : assignments) {
      assigned_ids.insert(a.doc_id);
      if (!scores.count(a.doc_id)) ++unscored;
    }
    if (unscored > 0)
      throw IntegrityError(std::to_string(unscored) +
                           " assigned documents lack polarity scores");
    int64_t unassigned = 0;
    for (const auto& [id, score] : scores)
      if (!assigned_ids.count(id)) ++unassigned;
    if (cfg.verbose && unassigned > 0)
      std::fprintf(stderr,
                   "note: %lld scored documents have no topic assignment "
                   "(dropped in preprocessing)\n",
                   static_cast<long long>(unassigned));

    const SentimentCube cube = build_cube(assignments, scores, dates, k);

    if (cfg.topic >= k)
      throw std::invalid_argument("topic filter out of range");
    write_cube_csv(cube, (fs::path(cfg.out_dir) / "cube.csv").string());
    write_overall_csv(cube, (fs::path(cfg.out_dir) / "overall.csv").string());

    const auto overall = daily_overall(cube);
    json days = json::array();
    int64_t total = 0;
    for (const auto& row : overall) {
      days.push_back({{"day", to_string(row.day)},
                      {"pos", row.pos},
                      {"neg", row.neg},
                      {"neu", row.neu},
                      {"total", row.pos + row.neg + row.neu}});
      total += row.pos + row.neg + row.neu;
    }
    json summary{{"days", days}, {"total_documents", total}};
    std::ofstream sfile(fs::path(cfg.out_dir) / "summary.json",
                        std::ios::binary | std::ios::trunc);
    sfile << summary.dump(2) << "\n";

    // per-day topic volumes, ranked, for the plotting bundle
    json top_topics = json::array();
    for (size_t d = 0; d < dates.size(); ++d) {
      std::vector<int32_t> topics(static_cast<size_t>(k));
      std::iota(topics.begin(), topics.end(), 0);
      std::vector<int64_t> volume(static_cast<size_t>(k), 0);
      for (int t = 0; t < k; ++t)
        volume[t] = cube.at(d, t, Polarity::Positive) +
                    cube.at(d, t, Polarity::Negative) +
                    cube.at(d, t, Polarity::Neutral);
      std::sort(topics.begin(), topics.end(), [&](int32_t a, int32_t b) {
        if (volume[a] != volume[b]) return volume[a] > volume[b];
        return a < b;
      });
      for (int r = 0; r < k; ++r)
        top_topics.push_back({{"day", to_string(dates[d])},
                              {"rank", r + 1},
                              {"topic", topics[r]},
                              {"volume", volume[topics[r]]}});
    }

    json trajectory = json::array();
    {
      CsvReader reader((fs::path(cfg.out_dir) / "trajectory.csv").string());
      auto header = reader.next();
      if (!header || header->size() != 5)
        throw std::runtime_error("bad trajectory header");
      while (auto row = reader.next())
        trajectory.push_back({{"day", (*row)[0]},
                              {"topic", parse_i32((*row)[1])},
                              {"rank", parse_i32((*row)[2])},
                              {"word", (*row)[3]},
                              {"prob", parse_f64((*row)[4])}});
    }

    json series = json::object();
    int64_t series_rows = 0;
    for (int t = 0; t < k; ++t) {
      if (cfg.topic >= 0 && t != cfg.topic) continue;
      json rows = json::array();
      for (size_t d = 0; d < dates.size(); ++d) {
        rows.push_back({{"day", to_string(dates[d])},
                        {"pos", cube.at(d, t, Polarity::Positive)},
                        {"neg", cube.at(d, t, Polarity::Negative)},
                        {"neu", cube.at(d, t, Polarity::Neutral)}});
        ++series_rows;
      }
      series[std::to_string(t)] = std::move(rows);
    }

    json report{{"top_topics", top_topics},
                {"trajectory", trajectory},
                {"series", series}};
    std::ofstream rfile(fs::path(cfg.out_dir) / "report.json",
                        std::ios::binary | std::ios::trunc);
    rfile << report.dump(2) << "\n";

    if (cfg.topic >= 0) {
      const std::string rel = "topic_" + std::to_string(cfg.topic) + ".csv";
      FILE* f = std::fopen((fs::path(cfg.out_dir) / rel).c_str(), "wb");
      if (!f) throw std::runtime_error("cannot write " + rel);
      std::fputs("day,pos,neg,neu\n", f);
      for (size_t d = 0; d < dates.size(); ++d)
        std::fprintf(f, "%s,%lld,%lld,%lld\n", to_string(dates[d]).c_str(),
                     static_cast<long long>(
                         cube.at(d, cfg.topic, Polarity::Positive)),
                     static_cast<long long>(
                         cube.at(d, cfg.topic, Polarity::Negative)),
                     static_cast<long long>(
                         cube.at(d, cfg.topic, Polarity::Neutral)));
      std::fclose(f);
      manifest["files"][rel] = dates.size();
    }

    manifest["files"]["cube.csv"] = dates.size() * static_cast<size_t>(k);
    manifest["files"]["overall.csv"] = dates.size();
    manifest["files"]["summary.json"] = days.size();
    manifest["files"]["report.json"] =
        top_topics.size() + trajectory.size() + series_rows;
    manifest["report"] = {{"total_documents", total},
                          {"unassigned_scored", unassigned},
                          {"topic_filter", cfg.topic}};
    save_manifest(cfg, manifest);
    return 0;
  });
}

}  // namespace daypulse
