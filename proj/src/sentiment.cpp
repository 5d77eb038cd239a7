#include "daypulse/sentiment.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include "daypulse/corpus.hpp"
#include "daypulse/csv.hpp"

namespace daypulse {

namespace {
constexpr double kBoost = 0.293;
constexpr double kDamp = -0.293;
}  // namespace

std::unordered_map<std::string, double> default_boosters() {
  std::unordered_map<std::string, double> b;
  for (const char* w :
       {"absolutely", "amazingly", "completely", "considerably", "decidedly",
        "deeply",     "enormously", "entirely",  "especially",   "exceptionally",
        "extremely",  "fully",      "greatly",   "highly",       "hugely",
        "incredibly", "intensely",  "majorly",   "more",         "most",
        "particularly", "purely",   "quite",     "really",       "remarkably",
        "so",         "substantially", "thoroughly", "totally",  "tremendously",
        "unbelievably", "unusually", "utterly",  "very"}) {
    b.emplace(w, kBoost);
  }
  for (const char* w :
       {"almost", "barely", "hardly", "kinda", "less", "little", "marginally",
        "occasionally", "partly", "scarcely", "slightly", "somewhat"}) {
    b.emplace(w, kDamp);
  }
  return b;
}

std::unordered_set<std::string> default_negators() {
  return {"aint",    "ain't",    "arent",    "aren't",   "cannot",
          "cant",    "can't",    "couldnt",  "couldn't", "darent",
          "daren't", "didnt",    "didn't",   "doesnt",   "doesn't",
          "dont",    "don't",    "hadnt",    "hadn't",   "hasnt",
          "hasn't",  "havent",   "haven't",  "isnt",     "isn't",
          "mightnt", "mightn't", "mustnt",   "mustn't",  "neednt",
          "needn't", "neither",  "never",    "no",       "none",
          "nope",    "nor",      "not",      "nothing",  "nowhere",
          "oughtnt", "oughtn't", "rarely",   "seldom",   "shant",
          "shan't",  "shouldnt", "shouldn't", "wasnt",   "wasn't",
          "werent",  "weren't",  "without",  "wont",     "won't",
          "wouldnt", "wouldn't"};
}

Lexicon load_lexicon(const std::string& path, LexiconStats* stats) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open lexicon file: " + path);
  Lexicon lex;
  LexiconStats local;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      ++local.skipped;
      continue;
    }
    std::string token = line.substr(0, tab);
    std::string rest = line.substr(tab + 1);
    auto tab2 = rest.find('\t');  // extra columns are ignored
    if (tab2 != std::string::npos) rest.erase(tab2);
    char* end = nullptr;
    double v = std::strtod(rest.c_str(), &end);
    if (end == rest.c_str() || !std::isfinite(v)) {
      ++local.skipped;
      continue;
    }
    for (char& c : token)
      c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (lex.valence.count(token)) ++local.duplicates;
    lex.valence[token] = v;  // last wins
    ++local.entries;
  }
  if (lex.valence.empty())
    throw std::runtime_error("no usable entries in lexicon file: " + path);
  if (stats) {
    local.entries = static_cast<int64_t>(lex.valence.size());
    *stats = local;
  }
  return lex;
}

const char* to_string(Polarity p) {
  switch (p) {
    case Polarity::Positive: return "positive";
    case Polarity::Negative: return "negative";
    default: return "neutral";
  }
}

double normalize_sum(double raw_sum, double alpha) {
  return raw_sum / std::sqrt(raw_sum * raw_sum + alpha);
}

Polarity classify(double compound) {
  if (!std::isfinite(compound))
    throw std::invalid_argument("compound score must be finite");
  if (compound > 0.05) return Polarity::Positive;
  if (compound < -0.05) return Polarity::Negative;
  return Polarity::Neutral;
}

namespace {

bool is_alpha(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

std::vector<std::string> split_items(const std::string& text) {
  std::vector<std::string> items;
  std::string cur;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) items.push_back(std::move(cur)), cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) items.push_back(std::move(cur));
  return items;
}

// leading/trailing non-letters removed, internal characters kept
std::string strip_punct(const std::string& item) {
  std::size_t b = 0, e = item.size();
  while (b < e && !is_alpha(item[b])) ++b;
  while (e > b && !is_alpha(item[e - 1])) --e;
  return item.substr(b, e - b);
}

std::string lower(std::string s) {
  for (char& c : s)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return s;
}

// fully uppercase word: >= 2 letters, all of them uppercase, nothing but
// letters and apostrophes
bool is_upper_item(const std::string& stripped) {
  if (stripped.size() < 2) return false;
  int letters = 0;
  for (char c : stripped) {
    if (c >= 'A' && c <= 'Z') ++letters;
    else if (c != '\'') return false;
  }
  return letters >= 2;
}

double punct_emphasis(const std::string& text, const RuleConstants& r) {
  int bangs = 0, questions = 0;
  for (char c : text) {
    if (c == '!') ++bangs;
    if (c == '?') ++questions;
  }
  double amp = std::min(bangs, r.exclaim_max) * r.exclaim_step;
  if (questions >= 2)
    amp += std::min(questions * r.question_step, r.question_cap);
  return amp;
}

}  // namespace

SentimentScore score_text(const Lexicon& lex, const std::string& text) {
  const RuleConstants& r = lex.rules;
  const std::vector<std::string> items = split_items(text);

  std::vector<std::string> keys(items.size());
  for (std::size_t i = 0; i < items.size(); ++i)
    keys[i] = lower(strip_punct(items[i]));

  // "not entirely uppercase": some letter-bearing item is not shouted
  int letter_items = 0, upper_items = 0;
  for (const auto& item : items) {
    std::string stripped = strip_punct(item);
    if (stripped.empty()) continue;
    ++letter_items;
    if (is_upper_item(stripped)) ++upper_items;
  }
  const bool cap_diff = upper_items > 0 && upper_items < letter_items;

  std::vector<double> sentiments(items.size(), 0.0);
  for (std::size_t i = 0; i < items.size(); ++i) {
    const std::string& key = keys[i];
    if (key.empty() || lex.boosters.count(key)) continue;  // modifiers score 0
    auto hit = lex.valence.find(key);
    if (hit == lex.valence.end()) continue;
    double valence = hit->second;

    // (2) ALL-CAPS emphasis
    if (cap_diff && is_upper_item(strip_punct(items[i])))
      valence += valence >= 0 ? r.caps_boost : -r.caps_boost;

    // (3) booster scope, distances 1..3 damped 1 / 0.95 / 0.90
    for (std::size_t dist = 1; dist <= 3 && dist <= i; ++dist) {
      const std::string& prev = keys[i - dist];
      if (lex.valence.count(prev)) continue;  // scored words do not boost
      auto b = lex.boosters.find(prev);
      if (b == lex.boosters.end()) continue;
      double s = b->second;
      if (dist == 2) s *= r.booster_damp_dist2;
      if (dist == 3) s *= r.booster_damp_dist3;
      if (valence < 0) s = -s;
      valence += s;
    }

    // (4) negation, each negator in the window flips once
    for (std::size_t dist = 1; dist <= 3 && dist <= i; ++dist) {
      if (lex.negators.count(keys[i - dist])) valence *= r.negation_scalar;
    }

    sentiments[i] = valence;
  }

  // (5) contrastive "but": first occurrence splits the weighting
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (keys[i] != "but") continue;
    for (std::size_t j = 0; j < sentiments.size(); ++j) {
      if (j < i) sentiments[j] *= r.but_weight_before;
      if (j > i) sentiments[j] *= r.but_weight_after;
    }
    break;
  }

  double sum = 0.0;
  for (double v : sentiments) sum += v;

  // (6) punctuation emphasis, added toward the sum's sign
  const double amp = punct_emphasis(text, r);
  if (sum > 0) sum += amp;
  else if (sum < 0) sum -= amp;

  SentimentScore score;
  score.compound = normalize_sum(sum, r.norm_alpha);
  score.label = classify(score.compound);
  return score;
}

std::map<std::string, SentimentScore> score_corpus(
    const Lexicon& lex, const std::vector<RawDocument>& docs) {
  std::map<std::string, SentimentScore> out;
  for (const auto& d : docs) out[d.id] = score_text(lex, d.text);
  return out;
}

void write_polarity_csv(const std::map<std::string, SentimentScore>& scores,
                        const std::string& path) {
  FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  std::fputs("doc_id,compound,label\n", f);
  for (const auto& [id, score] : scores)
    std::fprintf(f, "%s,%.17g,%s\n", csv_escape(id).c_str(), score.compound,
                 to_string(score.label));
  std::fclose(f);
}

std::map<std::string, SentimentScore> read_polarity_csv(
    const std::string& path) {
  CsvReader reader(path);
  auto header = reader.next();
  if (!header || header->size() != 3 || (*header)[0] != "doc_id")
    throw std::runtime_error("bad polarity file header: " + path);
  std::map<std::string, SentimentScore> out;
  while (auto row = reader.next()) {
    if (row->size() != 3)
      throw std::runtime_error("bad polarity row in " + path);
    SentimentScore score;
    char* end = nullptr;
    score.compound = std::strtod((*row)[1].c_str(), &end);
    if (end == (*row)[1].c_str())
      throw std::runtime_error("bad compound value in " + path);
    const std::string& label = (*row)[2];
    if (label == "positive") score.label = Polarity::Positive;
    else if (label == "negative") score.label = Polarity::Negative;
    else if (label == "neutral") score.label = Polarity::Neutral;
    else throw std::runtime_error("bad polarity label in " + path);
    out[(*row)[0]] = score;
  }
  return out;
}

}  // namespace daypulse
