#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace daypulse {

// exit-code-3 class: inputs are readable but inconsistent with each other
struct IntegrityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PipelineConfig {
  std::string input;
  std::string format = "auto";  // jsonl | csv | auto (by extension)
  std::string lang = "en";
  std::string start_date;
  std::string end_date;
  std::string timezone = "+00:00";
  std::string stopwords;
  std::string lemma_exceptions;
  int min_doc_len = 6;
  int min_df = 2;
  double max_df_ratio = 0.5;
  int phrase_min_count = 20;
  double phrase_threshold = 10.0;
  int k = 10;  // 0 picks up the select-k result from the manifest
  std::string k_grid = "2,3,4,5,8,10";
  double alpha = 0.0;  // <= 0 selects the 50/k default
  double eta = 0.01;
  int iterations = 200;
  int burn_in = 100;
  double kappa = 1000.0;
  double rho = 10.0;
  uint64_t seed = 42;
  int topn = 10;
  int topic = -1;  // report filter; -1 exports every topic
  std::string lexicon;
  std::string out_dir = "out";
  bool verbose = false;
};

// one `key=value` per line, '#' comments and blank lines ignored;
// unknown keys and unparseable values are fatal
PipelineConfig load_config(const std::string& path);

// applies one key=value pair; shared by the config parser and CLI flags
void set_config_key(PipelineConfig& cfg, const std::string& key,
                    const std::string& value);

// Pipeline commands. Each reads its inputs from disk, writes its artifacts
// under cfg.out_dir, updates manifest.json, and returns a process exit
// code: 0 success, 2 usage or input error, 3 data-integrity error.
int cmd_ingest(const PipelineConfig& cfg);
int cmd_preprocess(const PipelineConfig& cfg);
int cmd_select_k(const PipelineConfig& cfg);
int cmd_fit(const PipelineConfig& cfg);
int cmd_sentiment(const PipelineConfig& cfg);
int cmd_report(const PipelineConfig& cfg);

}  // namespace daypulse
