#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace daypulse {

using StopwordSet = std::unordered_set<std::string>;

// one token per line, '#' starts a comment
StopwordSet load_stopwords(const std::string& path);

struct TokenDoc {
  std::string doc_id;
  std::vector<std::string> tokens;
};

// Lowercases, strips URLs ("http(s)://" up to whitespace) and @mentions,
// keeps hashtag words without the '#', treats every non-ASCII-letter as a
// separator, then drops 1-character tokens and stopwords.
std::vector<std::string> tokenize(const std::string& text,
                                  const StopwordSet& stopwords);

// Suffix-rule lemmatizer with an exception table. The table wins; otherwise
// the longest matching suffix rule applies, at most one per token.
class Lemmatizer {
 public:
  Lemmatizer() = default;

  // exception file: two whitespace-separated columns "surface lemma"
  static Lemmatizer from_file(const std::string& path);

  void add_exception(std::string surface, std::string lemma);
  std::string lemmatize(const std::string& token) const;

 private:
  std::unordered_map<std::string, std::string> exceptions_;
};

// Collocation model over adjacent token pairs.
// score(a,b) = (count(a,b) - min_count) * total_tokens / (count(a) * count(b))
// Pairs with joint count >= min_count are kept; a pair is merged when its
// score exceeds the threshold.
class PhraseModel {
 public:
  PhraseModel() = default;
  PhraseModel(double threshold, int min_count)
      : threshold_(threshold), min_count_(min_count) {}

  double threshold() const { return threshold_; }
  int min_count() const { return min_count_; }
  const std::map<std::pair<std::string, std::string>, double>& scores() const {
    return scores_;
  }

  std::optional<double> score(const std::string& a, const std::string& b) const;
  bool is_phrase(const std::string& a, const std::string& b) const;

  friend PhraseModel fit_phrases(const std::vector<TokenDoc>& docs,
                                 int min_count, double threshold);

 private:
  double threshold_ = 10.0;
  int min_count_ = 20;
  std::map<std::pair<std::string, std::string>, double> scores_;
};

PhraseModel fit_phrases(const std::vector<TokenDoc>& docs, int min_count,
                        double threshold);

// One greedy left-to-right pass; adjacent phrase pairs merge into "a_b".
// A merged token is never reused as the left half of another merge.
TokenDoc apply_phrases(const PhraseModel& model, const TokenDoc& doc);

class Vocabulary {
 public:
  Vocabulary() = default;

  int32_t size() const { return static_cast<int32_t>(tokens_.size()); }
  // -1 when out of vocabulary
  int32_t id_of(const std::string& token) const;
  const std::string& token_of(int32_t id) const { return tokens_[id]; }
  int64_t df_of(int32_t id) const { return df_[id]; }
  const std::vector<std::string>& tokens() const { return tokens_; }

  // CSV "id,token,df"
  void export_csv(const std::string& path) const;
  static Vocabulary import_csv(const std::string& path);

  friend Vocabulary build_vocab(const std::vector<TokenDoc>& docs, int min_df,
                                double max_df_ratio);

 private:
  std::vector<std::string> tokens_;  // id -> token, lexicographic
  std::vector<int64_t> df_;          // id -> document frequency
  std::unordered_map<std::string, int32_t> index_;
};

// Keeps tokens with min_df <= df and df <= max_df_ratio * |docs| (strict
// cutoffs excluded); ids are assigned in lexicographic token order.
// An empty result is fatal.
Vocabulary build_vocab(const std::vector<TokenDoc>& docs, int min_df,
                       double max_df_ratio);

struct BowDoc {
  std::string doc_id;
  std::vector<std::pair<int32_t, int32_t>> counts;  // (word id, count), ids ascending

  int64_t total() const {
    int64_t n = 0;
    for (auto& [w, c] : counts) n += c;
    return n;
  }
};

// Drops out-of-vocabulary tokens; returns nullopt (rejected) when fewer
// than min_len tokens remain.
std::optional<BowDoc> to_bow(const TokenDoc& doc, const Vocabulary& vocab,
                             int min_len);

}  // namespace daypulse
