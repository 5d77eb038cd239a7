#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "daypulse/lda.hpp"
#include "daypulse/preprocess.hpp"
#include "doctest.h"

using namespace daypulse;

namespace {

// two disjoint 10-word groups; docs draw uniformly from one group
std::vector<BowDoc> two_group_corpus(int docs_per_group, int doc_len,
                                     uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<BowDoc> corpus;
  for (int g = 0; g < 2; ++g) {
    std::uniform_int_distribution<int32_t> pick(g * 10, g * 10 + 9);
    for (int d = 0; d < docs_per_group; ++d) {
      std::map<int32_t, int32_t> counts;
      for (int n = 0; n < doc_len; ++n) ++counts[pick(rng)];
      BowDoc doc;
      doc.doc_id = (g == 0 ? "a" : "b") + std::to_string(d);
      for (auto& [w, c] : counts) doc.counts.push_back({w, c});
      corpus.push_back(std::move(doc));
    }
  }
  return corpus;
}

bool same_model(const LdaModel& a, const LdaModel& b) {
  return a.z == b.z && a.phi == b.phi && a.theta == b.theta && a.nkw == b.nkw &&
         a.nk == b.nk && a.ndk == b.ndk;
}

}  // namespace

TEST_CASE("config validation rejects out-of-range values") {
  std::vector<BowDoc> corpus = {{"a", {{0, 3}}}};
  LdaConfig cfg;
  cfg.k = 0;
  CHECK_THROWS(fit_lda(corpus, 1, cfg));
  cfg = LdaConfig{};
  cfg.eta = 0.0;
  CHECK_THROWS(fit_lda(corpus, 1, cfg));
  cfg = LdaConfig{};
  cfg.burn_in = cfg.iterations;
  CHECK_THROWS(fit_lda(corpus, 1, cfg));
  CHECK_THROWS(fit_lda({}, 1, LdaConfig{}));

  // alpha <= 0 selects the 50/K default instead of failing
  cfg = LdaConfig{};
  cfg.k = 10;
  cfg.alpha = 0.0;
  CHECK(cfg.effective_alpha() == doctest::Approx(5.0));
  cfg.alpha = 0.25;
  CHECK(cfg.effective_alpha() == 0.25);
}

TEST_CASE("single topic degenerates to the smoothed unigram distribution") {
  std::vector<BowDoc> corpus = {
      {"a", {{0, 2}, {1, 1}}},
      {"b", {{1, 3}, {2, 2}}},
  };
  LdaConfig cfg;
  cfg.k = 1;
  cfg.alpha = 1.0;
  cfg.iterations = 5;
  cfg.burn_in = 2;
  auto model = fit_lda(corpus, 3, cfg);

  // counts: w0=2, w1=4, w2=2, total 8; phi[w] = (n_w + eta) / (8 + 3 eta)
  double denom = 8.0 + 3 * cfg.eta;
  CHECK(model.phi[0][0] == doctest::Approx((2 + cfg.eta) / denom).epsilon(1e-12));
  CHECK(model.phi[0][1] == doctest::Approx((4 + cfg.eta) / denom).epsilon(1e-12));
  CHECK(model.phi[0][2] == doctest::Approx((2 + cfg.eta) / denom).epsilon(1e-12));
  CHECK(model.theta[0][0] == doctest::Approx(1.0));
  CHECK(model.theta[1][0] == doctest::Approx(1.0));
}

TEST_CASE("same corpus and seed reproduce the model bit for bit") {
  auto corpus = two_group_corpus(30, 20, 11);
  LdaConfig cfg;
  cfg.k = 2;
  cfg.iterations = 40;
  cfg.burn_in = 20;
  cfg.seed = 1234;
  auto a = fit_lda(corpus, 20, cfg);
  auto b = fit_lda(corpus, 20, cfg);
  CHECK(same_model(a, b));

  cfg.seed = 1235;
  auto c = fit_lda(corpus, 20, cfg);
  CHECK_FALSE(same_model(a, c));
}

TEST_CASE("document order does not affect per-document results") {
  auto corpus = two_group_corpus(25, 15, 3);
  LdaConfig cfg;
  cfg.k = 2;
  cfg.iterations = 30;
  cfg.burn_in = 10;

  auto forward = fit_lda(corpus, 20, cfg);

  auto reversed = corpus;
  std::reverse(reversed.begin(), reversed.end());
  auto backward = fit_lda(reversed, 20, cfg);

  std::map<std::string, size_t> back_row;
  for (size_t d = 0; d < backward.doc_ids.size(); ++d)
    back_row[backward.doc_ids[d]] = d;
  for (size_t d = 0; d < forward.doc_ids.size(); ++d) {
    size_t b = back_row.at(forward.doc_ids[d]);
    for (int k = 0; k < 2; ++k)
      CHECK(forward.theta[d][k] == backward.theta[b][k]);
    CHECK(forward.z[d] == backward.z[b]);
  }
}

TEST_CASE("row normalization and count identities hold") {
  auto corpus = two_group_corpus(20, 12, 5);
  LdaConfig cfg;
  cfg.k = 3;
  cfg.iterations = 25;
  cfg.burn_in = 5;
  auto model = fit_lda(corpus, 20, cfg);

  for (int k = 0; k < model.k; ++k) {
    double sum = 0.0;
    for (int w = 0; w < model.vocab_size; ++w) {
      CHECK(model.phi[k][w] > 0.0);
      sum += model.phi[k][w];
    }
    CHECK(std::abs(sum - 1.0) <= 1e-9);

    int64_t row = 0;
    for (int w = 0; w < model.vocab_size; ++w) row += model.nkw[k][w];
    CHECK(row == model.nk[k]);
  }
  for (size_t d = 0; d < corpus.size(); ++d) {
    double sum = 0.0;
    for (int k = 0; k < model.k; ++k) sum += model.theta[d][k];
    CHECK(std::abs(sum - 1.0) <= 1e-9);
  }
}

TEST_CASE("topic mass stays equal to corpus token mass every sweep") {
  auto corpus = two_group_corpus(15, 10, 9);
  int64_t mass = 0;
  for (const auto& d : corpus) mass += d.total();

  LdaConfig cfg;
  cfg.k = 2;
  cfg.iterations = 20;
  cfg.burn_in = 5;
  int sweeps = 0;
  fit_lda(corpus, 20, cfg, nullptr, 0.0, nullptr,
          [&](int, std::span<const int64_t> nk) {
            int64_t total = 0;
            for (auto v : nk) total += v;
            CHECK(total == mass);
            ++sweeps;
          });
  CHECK(sweeps == cfg.iterations);
}

TEST_CASE("a zero-mass prior with kappa zero changes nothing") {
  auto corpus = two_group_corpus(20, 12, 17);
  LdaConfig cfg;
  cfg.k = 2;
  cfg.iterations = 30;
  cfg.burn_in = 10;

  auto plain = fit_lda(corpus, 20, cfg);

  Matrix<double> prior(2, 20);
  for (int k = 0; k < 2; ++k)
    for (int w = 0; w < 20; ++w) prior[k][w] = 1.0 / 20;
  auto with_prior = fit_lda(corpus, 20, cfg, &prior, 0.0);
  CHECK(same_model(plain, with_prior));
}

TEST_CASE("two disjoint word groups separate almost perfectly") {
  auto corpus = two_group_corpus(100, 40, 42);
  LdaConfig cfg;
  cfg.k = 2;
  cfg.iterations = 120;
  cfg.burn_in = 60;
  auto model = fit_lda(corpus, 20, cfg);

  // greedy matching: topic for group 0 is whichever has more phi mass there
  double mass0 = 0.0;
  for (int w = 0; w < 10; ++w) mass0 += model.phi[0][w];
  int group0_topic = mass0 > 0.5 ? 0 : 1;

  int correct = 0;
  for (size_t d = 0; d < model.doc_ids.size(); ++d) {
    int assigned = model.theta[d][0] > model.theta[d][1] ? 0 : 1;
    bool is_group0 = model.doc_ids[d][0] == 'a';
    int want = is_group0 ? group0_topic : 1 - group0_topic;
    if (assigned == want) ++correct;
  }
  CHECK(correct >= 190);
}

TEST_CASE("coherence matches direct evaluation on a toy corpus") {
  // docs: {0,1} x3 and {0,2}; top words of the constructed topics are known
  std::vector<BowDoc> corpus = {
      {"a", {{0, 1}, {1, 1}}},
      {"b", {{0, 1}, {1, 1}}},
      {"c", {{0, 1}, {1, 1}}},
      {"d", {{0, 1}, {2, 1}}},
  };

  LdaModel model;
  model.k = 2;
  model.vocab_size = 3;
  model.phi = Matrix<double>(2, 3);
  // topic 0 ranks words 0,1; topic 1 ranks words 1,2
  model.phi[0][0] = 0.6; model.phi[0][1] = 0.3; model.phi[0][2] = 0.1;
  model.phi[1][0] = 0.1; model.phi[1][1] = 0.3; model.phi[1][2] = 0.6;

  double eps = 1e-12;
  auto res = coherence(model, corpus, 2, eps);
  REQUIRE(res.per_topic.size() == 2);
  // topic 0 pair (0,1): D(0,1)=3, D(1)=3; topic 1 pair (2,1): D(2,1)=0, D(1)=3
  CHECK(res.per_topic[0] ==
        doctest::Approx(std::log((3 + eps) / 3.0)).epsilon(1e-12));
  CHECK(res.per_topic[1] ==
        doctest::Approx(std::log((0 + eps) / 3.0)).epsilon(1e-12));
  CHECK(res.mean ==
        doctest::Approx((res.per_topic[0] + res.per_topic[1]) / 2).epsilon(1e-12));
  CHECK(res.warnings == 0);

  // perfect co-occurrence sits at zero up to the epsilon smoothing
  CHECK(std::abs(res.per_topic[0]) < 1e-9);
}

TEST_CASE("coherence floors an absent word's frequency at one") {
  std::vector<BowDoc> corpus = {{"a", {{0, 1}}}, {"b", {{0, 1}}}};
  LdaModel model;
  model.k = 1;
  model.vocab_size = 3;
  model.phi = Matrix<double>(1, 3);
  // word 2 never occurs in the corpus but ranks in the top pair
  model.phi[0][0] = 0.5; model.phi[0][1] = 0.1; model.phi[0][2] = 0.4;

  double eps = 1e-12;
  auto res = coherence(model, corpus, 2, eps);
  REQUIRE(res.per_topic.size() == 1);
  CHECK(res.warnings > 0);
  // pair (0, 2): D(0,2)=0, D(2)=0 floored to 1
  CHECK(res.per_topic[0] == doctest::Approx(std::log(eps / 1.0)).epsilon(1e-12));
}

TEST_CASE("coherence top words break phi ties by word id") {
  std::vector<BowDoc> corpus = {{"a", {{0, 1}, {1, 1}, {2, 1}}}};
  LdaModel model;
  model.k = 1;
  model.vocab_size = 3;
  model.phi = Matrix<double>(1, 3);
  model.phi[0][0] = 1.0 / 3; model.phi[0][1] = 1.0 / 3; model.phi[0][2] = 1.0 / 3;
  auto res = coherence(model, corpus, 2, 1e-12);
  REQUIRE(res.top_words.size() == 1);
  CHECK(res.top_words[0] == std::vector<int32_t>{0, 1});
}

TEST_CASE("duplicate topic rows score identically") {
  std::vector<BowDoc> corpus = {
      {"a", {{0, 1}, {1, 1}}}, {"b", {{1, 1}, {2, 1}}}, {"c", {{0, 1}, {2, 1}}}};
  LdaModel model;
  model.k = 2;
  model.vocab_size = 3;
  model.phi = Matrix<double>(2, 3);
  for (int k = 0; k < 2; ++k) {
    model.phi[k][0] = 0.5; model.phi[k][1] = 0.3; model.phi[k][2] = 0.2;
  }
  auto res = coherence(model, corpus, 2, 1e-12);
  CHECK(res.per_topic[0] == res.per_topic[1]);
}

TEST_CASE("select_k scans the grid and prefers smaller ties") {
  auto corpus = two_group_corpus(40, 15, 23);
  LdaConfig tmpl;
  tmpl.iterations = 30;
  tmpl.burn_in = 10;

  auto single = select_k(corpus, 20, {4}, tmpl, 5);
  CHECK(single.best_k == 4);
  REQUIRE(single.curve.size() == 1);

  auto res = select_k(corpus, 20, {2, 3, 4}, tmpl, 5);
  REQUIRE(res.curve.size() == 3);
  double best = res.curve[0].second;
  int best_k = res.curve[0].first;
  for (const auto& [k, score] : res.curve) {
    if (score > best) {
      best = score;
      best_k = k;
    }
  }
  CHECK(res.best_k == best_k);

  auto rerun = select_k(corpus, 20, {2, 3, 4}, tmpl, 5);
  CHECK(rerun.best_k == res.best_k);
  for (size_t i = 0; i < res.curve.size(); ++i)
    CHECK(rerun.curve[i].second == res.curve[i].second);

  CHECK_THROWS(select_k(corpus, 20, {}, tmpl, 5));
  CHECK_THROWS(select_k(corpus, 20, {3, 2}, tmpl, 5));
}
