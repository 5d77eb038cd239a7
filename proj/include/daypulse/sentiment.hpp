#pragma once

#include <map>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace daypulse {

struct RawDocument;

// Every numeric constant of the rule cascade in one place.
struct RuleConstants {
  double negation_scalar = -0.74;  // "not good" flips and damps
  double caps_boost = 0.733;       // ALL-CAPS emphasis, sign-preserving
  double booster_damp_dist2 = 0.95;
  double booster_damp_dist3 = 0.90;
  double but_weight_before = 0.5;
  double but_weight_after = 1.5;
  double exclaim_step = 0.292;  // per '!', at most 3 counted
  int exclaim_max = 3;
  double question_step = 0.18;  // per '?' once there are >= 2
  double question_cap = 0.96;
  double norm_alpha = 15.0;  // compound = S / sqrt(S^2 + norm_alpha)
};

// +-0.293 class increments for intensity adverbs
std::unordered_map<std::string, double> default_boosters();
std::unordered_set<std::string> default_negators();

struct Lexicon {
  std::unordered_map<std::string, double> valence;
  std::unordered_map<std::string, double> boosters = default_boosters();
  std::unordered_set<std::string> negators = default_negators();
  RuleConstants rules;
};

struct LexiconStats {
  int64_t entries = 0;
  int64_t skipped = 0;
  int64_t duplicates = 0;
};

// Tab-separated "token<TAB>mean_valence" lines; extra columns are ignored,
// malformed lines are skipped with a warning, duplicate tokens keep the
// last value. An empty usable lexicon is fatal.
Lexicon load_lexicon(const std::string& path, LexiconStats* stats = nullptr);

enum class Polarity { Positive, Negative, Neutral };

const char* to_string(Polarity p);

struct SentimentScore {
  double compound = 0.0;  // in (-1, 1)
  Polarity label = Polarity::Neutral;
};

// S / sqrt(S^2 + alpha); odd, strictly monotone, range (-1, 1)
double normalize_sum(double raw_sum, double alpha = 15.0);

// compound > 0.05 -> positive, < -0.05 -> negative, else neutral
// (boundaries inclusive to neutral); non-finite input is fatal
Polarity classify(double compound);

// Scores raw, unpreprocessed text. Whitespace-split items keep their case
// and punctuation; the cascade applies, in order: lexicon lookup,
// ALL-CAPS emphasis, booster scope over the 3 preceding items, negation
// over the 3 preceding items, contrastive "but" reweighting, and
// '!'/'?' emphasis on the whole text.
SentimentScore score_text(const Lexicon& lex, const std::string& text);

// deterministic id -> score mapping; every input id appears exactly once
std::map<std::string, SentimentScore> score_corpus(
    const Lexicon& lex, const std::vector<RawDocument>& docs);

// CSV "doc_id,compound,label", ordered by doc id
void write_polarity_csv(const std::map<std::string, SentimentScore>& scores,
                        const std::string& path);

// "doc_id,compound,label" -> scores; throws on malformed rows
std::map<std::string, SentimentScore> read_polarity_csv(
    const std::string& path);

}  // namespace daypulse
