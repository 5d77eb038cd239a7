#include "daypulse/preprocess.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "daypulse/csv.hpp"

namespace daypulse {

StopwordSet load_stopwords(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open stopword file: " + path);
  StopwordSet out;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::string word;
    while (ss >> word) out.insert(word);
  }
  return out;
}

namespace {

bool is_ascii_alpha(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

bool is_word_char(char c) {
  return is_ascii_alpha(c) || (c >= '0' && c <= '9') || c == '_';
}

// erases scheme://... up to whitespace, and @mention words
std::string strip_urls_and_mentions(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text.compare(i, 7, "http://") == 0 ||
        text.compare(i, 8, "https://") == 0) {
      while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])))
        ++i;
      continue;
    }
    if (text[i] == '@' && i + 1 < text.size() && is_word_char(text[i + 1])) {
      ++i;
      while (i < text.size() && is_word_char(text[i])) ++i;
      continue;
    }
    out.push_back(text[i]);
    ++i;
  }
  return out;
}

}  // namespace

std::vector<std::string> tokenize(const std::string& text,
                                  const StopwordSet& stopwords) {
  const std::string cleaned = strip_urls_and_mentions(text);
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    if (cur.size() >= 2 && !stopwords.count(cur)) out.push_back(cur);
    cur.clear();
  };
  for (char c : cleaned) {
    if (c >= 'a' && c <= 'z') {
      cur.push_back(c);
    } else if (c >= 'A' && c <= 'Z') {
      cur.push_back(static_cast<char>(c - 'A' + 'a'));
    } else {
      flush();  // every non-letter separates, '#' included
    }
  }
  flush();
  return out;
}

Lemmatizer Lemmatizer::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open lemma exception file: " + path);
  Lemmatizer lem;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::string surface, lemma;
    if (ss >> surface >> lemma) lem.add_exception(surface, lemma);
  }
  return lem;
}

void Lemmatizer::add_exception(std::string surface, std::string lemma) {
  exceptions_[std::move(surface)] = std::move(lemma);
}

namespace {

bool ends_with(const std::string& s, const char* suffix, std::size_t len) {
  return s.size() >= len && s.compare(s.size() - len, len, suffix) == 0;
}

bool is_vowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

// letters whose inflectional doubling is undone ("running" -> "run",
// but "falling" keeps "fall")
bool undoubles(char c) {
  switch (c) {
    case 'b': case 'd': case 'g': case 'k': case 'm':
    case 'n': case 'p': case 'r': case 't':
      return true;
    default:
      return false;
  }
}

// stem fixup shared by the -ing/-ed rules: undo consonant doubling or
// restore a silent e after a consonant-vowel-consonant ending
std::string restore_stem(std::string stem) {
  std::size_t n = stem.size();
  if (n >= 3 && stem[n - 1] == stem[n - 2] && !is_vowel(stem[n - 1]) &&
      undoubles(stem[n - 1])) {
    stem.pop_back();
    return stem;
  }
  if (n >= 3 && !is_vowel(stem[n - 1]) && stem[n - 1] != 'w' &&
      stem[n - 1] != 'x' && stem[n - 1] != 'y' && is_vowel(stem[n - 2]) &&
      !is_vowel(stem[n - 3])) {
    stem.push_back('e');
  }
  return stem;
}

}  // namespace

std::string Lemmatizer::lemmatize(const std::string& token) const {
  auto it = exceptions_.find(token);
  if (it != exceptions_.end()) return it->second;

  // longest suffix first, at most one rule fires
  if (ends_with(token, "sses", 4) && token.size() >= 5)
    return token.substr(0, token.size() - 2);
  if (ends_with(token, "ies", 3) && token.size() >= 5)
    return token.substr(0, token.size() - 3) + "y";
  if (ends_with(token, "eed", 3) && token.size() >= 5)
    return token.substr(0, token.size() - 1);
  if (ends_with(token, "ing", 3) && token.size() >= 6)
    return restore_stem(token.substr(0, token.size() - 3));
  if (ends_with(token, "ed", 2) && token.size() >= 5)
    return restore_stem(token.substr(0, token.size() - 2));
  if (ends_with(token, "s", 1) && token.size() >= 4 &&
      !ends_with(token, "ss", 2) && !ends_with(token, "us", 2) &&
      !ends_with(token, "is", 2))
    return token.substr(0, token.size() - 1);
  return token;
}

std::optional<double> PhraseModel::score(const std::string& a,
                                         const std::string& b) const {
  auto it = scores_.find({a, b});
  if (it == scores_.end()) return std::nullopt;
  return it->second;
}

bool PhraseModel::is_phrase(const std::string& a, const std::string& b) const {
  auto s = score(a, b);
  return s && *s > threshold_;
}

PhraseModel fit_phrases(const std::vector<TokenDoc>& docs, int min_count,
                        double threshold) {
  if (min_count < 1) throw std::invalid_argument("phrase min_count must be >= 1");
  PhraseModel model(threshold, min_count);

  std::unordered_map<std::string, int64_t> unigram;
  std::map<std::pair<std::string, std::string>, int64_t> bigram;
  int64_t total = 0;
  for (const auto& doc : docs) {
    for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
      ++unigram[doc.tokens[i]];
      ++total;
      if (i + 1 < doc.tokens.size())
        ++bigram[{doc.tokens[i], doc.tokens[i + 1]}];
    }
  }
  for (const auto& [pair, count] : bigram) {
    if (count < min_count) continue;
    double s = static_cast<double>(count - min_count) *
               static_cast<double>(total) /
               (static_cast<double>(unigram[pair.first]) *
                static_cast<double>(unigram[pair.second]));
    model.scores_.emplace(pair, s);
  }
  return model;
}

TokenDoc apply_phrases(const PhraseModel& model, const TokenDoc& doc) {
  TokenDoc out;
  out.doc_id = doc.doc_id;
  out.tokens.reserve(doc.tokens.size());
  std::size_t i = 0;
  while (i < doc.tokens.size()) {
    if (i + 1 < doc.tokens.size() &&
        model.is_phrase(doc.tokens[i], doc.tokens[i + 1])) {
      out.tokens.push_back(doc.tokens[i] + "_" + doc.tokens[i + 1]);
      i += 2;  // merged token cannot chain into a triple
    } else {
      out.tokens.push_back(doc.tokens[i]);
      ++i;
    }
  }
  return out;
}

int32_t Vocabulary::id_of(const std::string& token) const {
  auto it = index_.find(token);
  return it == index_.end() ? -1 : it->second;
}

void Vocabulary::export_csv(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write vocabulary: " + path);
  out << "id,token,df\n";
  for (int32_t id = 0; id < size(); ++id) {
    out << csv_row({std::to_string(id), tokens_[id], std::to_string(df_[id])});
  }
}

Vocabulary Vocabulary::import_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open vocabulary: " + path);
  CsvReader reader(in);
  auto header = reader.next();
  if (!header || header->size() < 3 || (*header)[0] != "id")
    throw std::runtime_error("bad vocabulary header in " + path);
  Vocabulary v;
  while (auto row = reader.next()) {
    if (row->size() == 1 && (*row)[0].empty()) continue;
    if (row->size() != 3) throw std::runtime_error("bad vocabulary row in " + path);
    int32_t id = static_cast<int32_t>(std::stol((*row)[0]));
    if (id != v.size())
      throw std::runtime_error("vocabulary ids must be dense in " + path);
    v.tokens_.push_back((*row)[1]);
    v.df_.push_back(std::stoll((*row)[2]));
    v.index_.emplace((*row)[1], id);
  }
  return v;
}

Vocabulary build_vocab(const std::vector<TokenDoc>& docs, int min_df,
                       double max_df_ratio) {
  if (max_df_ratio <= 0.0 || max_df_ratio > 1.0)
    throw std::invalid_argument("max_df_ratio must be in (0, 1]");
  std::map<std::string, int64_t> df;  // ordered: ids come out lexicographic
  std::unordered_set<std::string> in_doc;
  for (const auto& doc : docs) {
    in_doc.clear();
    for (const auto& t : doc.tokens) in_doc.insert(t);
    for (const auto& t : in_doc) ++df[t];
  }
  const double max_df = max_df_ratio * static_cast<double>(docs.size());
  Vocabulary v;
  for (const auto& [token, n] : df) {
    if (n < min_df || static_cast<double>(n) > max_df) continue;
    v.index_.emplace(token, v.size());
    v.tokens_.push_back(token);
    v.df_.push_back(n);
  }
  if (v.size() == 0) {
    throw std::runtime_error(
        "vocabulary is empty after pruning (min_df=" + std::to_string(min_df) +
        ", max_df_ratio=" + std::to_string(max_df_ratio) + ", docs=" +
        std::to_string(docs.size()) + ")");
  }
  return v;
}

std::optional<BowDoc> to_bow(const TokenDoc& doc, const Vocabulary& vocab,
                             int min_len) {
  std::map<int32_t, int32_t> counts;
  int64_t total = 0;
  for (const auto& t : doc.tokens) {
    int32_t id = vocab.id_of(t);
    if (id < 0) continue;  // out of vocabulary
    ++counts[id];
    ++total;
  }
  if (total < min_len) return std::nullopt;
  BowDoc bow;
  bow.doc_id = doc.doc_id;
  bow.counts.assign(counts.begin(), counts.end());
  return bow;
}

}  // namespace daypulse
