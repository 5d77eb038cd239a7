#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "daypulse/pipeline.hpp"

namespace {

struct KeyFlag {
  const char* key;
  const char* help;
};

// every config-file key doubles as a flag of the same name
constexpr KeyFlag kKeys[] = {
    {"input", "record file (.jsonl or .csv)"},
    {"format", "input format: jsonl, csv, or auto"},
    {"lang", "language tag to keep (primary-subtag match)"},
    {"start_date", "first day of the study window, YYYY-MM-DD"},
    {"end_date", "last day of the study window, YYYY-MM-DD"},
    {"timezone", "UTC offset for day bucketing, e.g. +00:00"},
    {"stopwords", "stopword list, one token per line"},
    {"lemma_exceptions", "lemma exception file, `surface lemma` per line"},
    {"min_doc_len", "minimum tokens per kept document"},
    {"min_df", "minimum document frequency for vocabulary terms"},
    {"max_df_ratio", "maximum document-frequency ratio for vocabulary terms"},
    {"phrase_min_count", "minimum bigram count for phrase candidates"},
    {"phrase_threshold", "phrase score threshold"},
    {"k", "topic count (0 uses the select-k result)"},
    {"k_grid", "comma-separated candidate topic counts for select-k"},
    {"alpha", "document-topic prior (<= 0 selects 50/k)"},
    {"eta", "topic-word prior"},
    {"iterations", "Gibbs sweeps per slice"},
    {"burn_in", "sweeps discarded before averaging"},
    {"kappa", "day-to-day topic-word prior strength"},
    {"rho", "day-to-day document-topic prior strength"},
    {"seed", "RNG seed"},
    {"topn", "words per topic in trajectory and coherence"},
    {"topic", "restrict report series to one topic"},
    {"lexicon", "valence lexicon, `token<TAB>valence` per line"},
    {"out_dir", "output directory"},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"daily topic discovery and sentiment aggregation pipeline"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::pair<std::string, std::string>> overrides;
  bool verbose = false;

  app.add_option("--config", config_path, "key=value config file");
  app.add_flag("--verbose", verbose, "extra progress notes on stderr");
  app.add_option_function<std::string>(
         "--out",
         [&](const std::string& v) { overrides.emplace_back("out_dir", v); },
         "output directory (same as --out_dir)")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  for (const auto& [key, help] : kKeys) {
    const std::string name = key;
    app.add_option_function<std::string>(
           "--" + name,
           [&overrides, name](const std::string& v) {
             overrides.emplace_back(name, v);
           },
           help)
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  }

  auto* ingest =
      app.add_subcommand("ingest", "load records, filter, slice by day");
  auto* preprocess =
      app.add_subcommand("preprocess", "tokenize into a pruned bag of words");
  auto* select_k =
      app.add_subcommand("select-k", "pick a topic count by coherence");
  auto* fit = app.add_subcommand("fit", "fit the day-chained topic model");
  auto* sentiment =
      app.add_subcommand("sentiment", "score every ingested document");
  auto* report =
      app.add_subcommand("report", "aggregate topic-sentiment time series");
  for (auto* sub : {ingest, preprocess, select_k, fit, sentiment, report})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  daypulse::PipelineConfig cfg;
  try {
    if (!config_path.empty()) cfg = daypulse::load_config(config_path);
    for (const auto& [key, value] : overrides)
      daypulse::set_config_key(cfg, key, value);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  if (verbose) cfg.verbose = true;

  if (ingest->parsed()) return daypulse::cmd_ingest(cfg);
  if (preprocess->parsed()) return daypulse::cmd_preprocess(cfg);
  if (select_k->parsed()) return daypulse::cmd_select_k(cfg);
  if (fit->parsed()) return daypulse::cmd_fit(cfg);
  if (sentiment->parsed()) return daypulse::cmd_sentiment(cfg);
  if (report->parsed()) return daypulse::cmd_report(cfg);
  return 2;
}
