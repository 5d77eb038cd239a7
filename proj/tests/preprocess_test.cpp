#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "daypulse/preprocess.hpp"
#include "doctest.h"

using namespace daypulse;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path);
  out << content;
  return path.string();
}

std::string join(const std::vector<std::string>& tokens) {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

// score(a,b) = (count(a,b) - min_count) * total / (count(a) * count(b)),
// recounted from scratch
std::map<std::pair<std::string, std::string>, double> brute_force_scores(
    const std::vector<TokenDoc>& docs, int min_count) {
  std::map<std::string, int64_t> unigram;
  std::map<std::pair<std::string, std::string>, int64_t> bigram;
  int64_t total = 0;
  for (const auto& d : docs) {
    for (size_t i = 0; i < d.tokens.size(); ++i) {
      ++unigram[d.tokens[i]];
      ++total;
      if (i + 1 < d.tokens.size()) ++bigram[{d.tokens[i], d.tokens[i + 1]}];
    }
  }
  std::map<std::pair<std::string, std::string>, double> scores;
  for (const auto& [pair, c] : bigram) {
    if (c < min_count) continue;
    scores[pair] = double(c - min_count) * double(total) /
                   (double(unigram[pair.first]) * double(unigram[pair.second]));
  }
  return scores;
}

}  // namespace

TEST_CASE("tokenizer strips urls, mentions, hashtags, digits") {
  StopwordSet stop;
  CHECK(tokenize("Stay safe HOME!! https://t.co/x", stop) ==
        std::vector<std::string>{"stay", "safe", "home"});
  CHECK(tokenize("@WHO #COVID19 update", stop) ==
        std::vector<std::string>{"covid", "update"});
  CHECK(tokenize("", stop).empty());
  CHECK(tokenize("http://only.a.url/here", stop).empty());
  CHECK(tokenize("don't panic", stop) ==
        std::vector<std::string>{"don", "panic"});
  CHECK(tokenize("a I x yz", stop) == std::vector<std::string>{"yz"});

  StopwordSet with_stop = {"the", "is"};
  CHECK(tokenize("The cat is HERE", with_stop) ==
        std::vector<std::string>{"cat", "here"});
}

TEST_CASE("tokenizer is idempotent on its own output") {
  StopwordSet stop = {"the", "and", "to"};
  std::vector<std::string> texts = {
      "Stay safe HOME!! https://t.co/x and the rest",
      "@user1 RT: numbers 123 mixed99up #StayHome https://a.b/c?d=e",
      "punctuation... everywhere?! (really)",
  };
  for (const auto& text : texts) {
    auto once = tokenize(text, stop);
    auto twice = tokenize(join(once), stop);
    CHECK(once == twice);
  }
}

TEST_CASE("stopword file ignores comments and blank lines") {
  auto path = write_temp("stopwords.txt", "# comment\nthe\n\nand\n");
  auto stop = load_stopwords(path);
  CHECK(stop.size() == 2);
  CHECK(stop.count("the") == 1);
  CHECK(stop.count("and") == 1);
  CHECK(stop.count("# comment") == 0);
}

TEST_CASE("lemmatizer applies exceptions before suffix rules") {
  Lemmatizer lem;
  lem.add_exception("went", "go");
  lem.add_exception("news", "news");
  CHECK(lem.lemmatize("went") == "go");
  CHECK(lem.lemmatize("news") == "news");
  CHECK(lem.lemmatize("cases") == "case");
  CHECK(lem.lemmatize("studies") == "study");
  CHECK(lem.lemmatize("go") == "go");
  CHECK(lem.lemmatize("glasses") == "glass");
  CHECK(lem.lemmatize("running") == "run");
  CHECK(lem.lemmatize("making") == "make");
  CHECK(lem.lemmatize("walked") == "walk");
  CHECK(lem.lemmatize("stopped") == "stop");
  // one rule at most: no cascade through intermediate forms
  CHECK(lem.lemmatize("meetings") == "meeting");
  // plural rule needs length >= 4
  CHECK(lem.lemmatize("its") == "its");
  CHECK(lem.lemmatize("dogs") == "dog");
}

TEST_CASE("lemmatizer exception file loads two columns") {
  auto path = write_temp("lemma.txt", "children child\nwent go\n");
  auto lem = Lemmatizer::from_file(path);
  CHECK(lem.lemmatize("children") == "child");
  CHECK(lem.lemmatize("went") == "go");
}

TEST_CASE("phrase scores match a brute-force recount") {
  std::vector<TokenDoc> docs;
  for (int i = 0; i < 50; ++i) {
    docs.push_back({"d" + std::to_string(i),
                    {"human", "rights", "matter", "every", "day"}});
  }
  for (int i = 0; i < 30; ++i) {
    docs.push_back({"e" + std::to_string(i), {"other", "words", "here"}});
  }
  int min_count = 5;
  auto model = fit_phrases(docs, min_count, 10.0);
  auto expected = brute_force_scores(docs, min_count);
  REQUIRE(model.scores().size() == expected.size());
  for (const auto& [pair, score] : expected) {
    auto got = model.score(pair.first, pair.second);
    REQUIRE(got.has_value());
    CHECK(*got == doctest::Approx(score).epsilon(1e-12));
  }
  CHECK(model.score("human", "rights").has_value());
  CHECK(*model.score("human", "rights") > 0.0);
}

TEST_CASE("pairs under min_count are absent") {
  std::vector<TokenDoc> docs = {{"a", {"rare", "pair", "words"}}};
  auto model = fit_phrases(docs, 2, 0.0);
  CHECK(model.scores().empty());
  CHECK_FALSE(model.score("rare", "pair").has_value());
}

TEST_CASE("single-token documents produce an empty model") {
  std::vector<TokenDoc> docs = {{"a", {"one"}}, {"b", {"two"}}};
  auto model = fit_phrases(docs, 1, 0.0);
  CHECK(model.scores().empty());
  CHECK(fit_phrases({}, 1, 0.0).scores().empty());
}

TEST_CASE("phrase merge is a single greedy pass") {
  std::vector<TokenDoc> docs;
  for (int i = 0; i < 60; ++i)
    docs.push_back({"d" + std::to_string(i), {"human", "rights", "filler"}});
  auto model = fit_phrases(docs, 5, 1.0);
  REQUIRE(model.is_phrase("human", "rights"));

  auto merged = apply_phrases(model, {"x", {"human", "rights", "act"}});
  CHECK(merged.tokens == std::vector<std::string>{"human_rights", "act"});

  merged = apply_phrases(model, {"x", {"human", "rights", "human", "rights"}});
  CHECK(merged.tokens ==
        std::vector<std::string>{"human_rights", "human_rights"});

  merged = apply_phrases(model, {"x", {"no", "phrases", "here"}});
  CHECK(merged.tokens == std::vector<std::string>{"no", "phrases", "here"});

  // merged tokens never chain into triples in one pass
  merged = apply_phrases(model, {"x", {"human", "rights", "rights"}});
  CHECK(merged.tokens == std::vector<std::string>{"human_rights", "rights"});
}

TEST_CASE("each merge reduces token count by exactly one") {
  std::vector<TokenDoc> docs;
  for (int i = 0; i < 60; ++i)
    docs.push_back({"d" + std::to_string(i), {"human", "rights", "filler"}});
  auto model = fit_phrases(docs, 5, 1.0);

  TokenDoc doc{"x", {"human", "rights", "and", "human", "rights", "again"}};
  auto merged = apply_phrases(model, doc);
  size_t merges = 0;
  for (const auto& t : merged.tokens)
    if (t.find('_') != std::string::npos) ++merges;
  CHECK(doc.tokens.size() - merged.tokens.size() == merges);
}

TEST_CASE("vocabulary prunes by document frequency") {
  std::vector<TokenDoc> docs = {
      {"a", {"covid", "mask", "stay"}},
      {"b", {"covid", "mask", "home"}},
      {"c", {"covid", "vaccine"}},
  };

  auto all = build_vocab(docs, 1, 1.0);
  CHECK(all.size() == 5);

  auto pruned = build_vocab(docs, 2, 0.9);
  // covid df=3 exceeds 0.9 * 3; mask df=2 stays; singletons drop
  CHECK(pruned.id_of("covid") == -1);
  CHECK(pruned.id_of("mask") == 0);
  CHECK(pruned.size() == 1);
  CHECK(pruned.df_of(0) == 2);

  CHECK_THROWS(build_vocab(docs, 10, 1.0));
}

TEST_CASE("vocabulary ids follow lexicographic token order") {
  std::vector<TokenDoc> docs = {{"a", {"zebra", "apple", "mango"}},
                                {"b", {"zebra", "apple", "mango"}}};
  auto vocab = build_vocab(docs, 1, 1.0);
  REQUIRE(vocab.size() == 3);
  CHECK(vocab.token_of(0) == "apple");
  CHECK(vocab.token_of(1) == "mango");
  CHECK(vocab.token_of(2) == "zebra");
  CHECK(vocab.id_of("apple") == 0);
  CHECK(vocab.id_of("zebra") == 2);
  // repeated tokens inside one doc count once for df
  std::vector<TokenDoc> rep = {{"a", {"word", "word", "word"}}};
  auto v2 = build_vocab(rep, 1, 1.0);
  CHECK(v2.df_of(0) == 1);
}

TEST_CASE("vocabulary csv round-trips") {
  std::vector<TokenDoc> docs = {{"a", {"covid", "mask"}},
                                {"b", {"covid", "home"}}};
  auto vocab = build_vocab(docs, 1, 1.0);
  auto path = write_temp("vocab_roundtrip.csv", "");
  vocab.export_csv(path);
  auto back = Vocabulary::import_csv(path);
  REQUIRE(back.size() == vocab.size());
  for (int32_t id = 0; id < vocab.size(); ++id) {
    CHECK(back.token_of(id) == vocab.token_of(id));
    CHECK(back.df_of(id) == vocab.df_of(id));
  }
}

TEST_CASE("bow conversion enforces the minimum length") {
  std::vector<TokenDoc> docs = {
      {"a", {"alpha", "beta", "gamma", "delta", "eps", "zeta"}}};
  auto vocab = build_vocab(docs, 1, 1.0);

  TokenDoc five{"five", {"alpha", "beta", "gamma", "delta", "eps"}};
  CHECK_FALSE(to_bow(five, vocab, 6).has_value());

  TokenDoc six{"six", {"alpha", "beta", "gamma", "delta", "eps", "zeta"}};
  auto bow = to_bow(six, vocab, 6);
  REQUIRE(bow.has_value());
  CHECK(bow->total() == 6);

  // oov tokens drop before the length check
  TokenDoc padded{"padded", {"alpha", "beta", "gamma", "delta", "eps", "oov"}};
  CHECK_FALSE(to_bow(padded, vocab, 6).has_value());
}

TEST_CASE("bow counts repeated tokens with ascending ids") {
  std::vector<TokenDoc> docs = {{"a", {"aa", "aa", "bb"}}};
  auto vocab = build_vocab(docs, 1, 1.0);
  auto bow = to_bow({"x", {"aa", "aa", "bb"}}, vocab, 0);
  REQUIRE(bow.has_value());
  REQUIRE(bow->counts.size() == 2);
  CHECK(bow->counts[0] == std::pair<int32_t, int32_t>{0, 2});
  CHECK(bow->counts[1] == std::pair<int32_t, int32_t>{1, 1});
  CHECK(bow->total() == 3);
}
