#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "daypulse/analytics.hpp"
#include "daypulse/corpus.hpp"
#include "daypulse/dtm.hpp"
#include "daypulse/lda.hpp"
#include "daypulse/preprocess.hpp"
#include "daypulse/sentiment.hpp"

namespace py = pybind11;
using namespace daypulse;

namespace {

using PyBow = std::vector<std::pair<std::string,
                                    std::vector<std::pair<int32_t, int32_t>>>>;

std::vector<BowDoc> to_bows(const PyBow& docs) {
  std::vector<BowDoc> out;
  out.reserve(docs.size());
  for (const auto& [id, counts] : docs) out.push_back({id, counts});
  return out;
}

std::vector<std::vector<double>> to_rows(const DMatrix& m) {
  std::vector<std::vector<double>> out(m.rows());
  for (size_t r = 0; r < m.rows(); ++r)
    out[r].assign(m.row(r).begin(), m.row(r).end());
  return out;
}

LdaConfig make_lda_config(int k, double alpha, double eta, int iterations,
                          int burn_in, uint64_t seed) {
  LdaConfig cfg;
  cfg.k = k;
  cfg.alpha = alpha;
  cfg.eta = eta;
  cfg.iterations = iterations;
  cfg.burn_in = burn_in;
  cfg.seed = seed;
  return cfg;
}

Polarity label_from_string(const std::string& s) {
  if (s == "positive") return Polarity::Positive;
  if (s == "negative") return Polarity::Negative;
  if (s == "neutral") return Polarity::Neutral;
  throw std::invalid_argument("unknown polarity label '" + s + "'");
}

}  // namespace

PYBIND11_MODULE(_daypulse, m) {
  m.doc() = "daily topic discovery and sentiment aggregation engine";

  m.def(
      "tokenize",
      [](const std::string& text, const std::vector<std::string>& stopwords) {
        return tokenize(text, StopwordSet(stopwords.begin(), stopwords.end()));
      },
      py::arg("text"), py::arg("stopwords") = std::vector<std::string>{});

  m.def(
      "lemmatize",
      [](const std::string& token) { return Lemmatizer().lemmatize(token); },
      py::arg("token"));

  py::class_<Lexicon>(m, "Lexicon");
  m.def(
      "load_lexicon",
      [](const std::string& path) { return load_lexicon(path); },
      py::arg("path"));
  m.def(
      "score_text",
      [](const Lexicon& lex, const std::string& text) {
        const SentimentScore s = score_text(lex, text);
        return py::make_tuple(s.compound, std::string(to_string(s.label)));
      },
      py::arg("lexicon"), py::arg("text"));
  m.def(
      "classify",
      [](double compound) { return std::string(to_string(classify(compound))); },
      py::arg("compound"));
  m.def("normalize_sum", &normalize_sum, py::arg("raw_sum"),
        py::arg("alpha") = 15.0);

  py::class_<LdaModel>(m, "LdaModel")
      .def_readonly("k", &LdaModel::k)
      .def_readonly("vocab_size", &LdaModel::vocab_size)
      .def_readonly("doc_ids", &LdaModel::doc_ids)
      .def_property_readonly(
          "phi", [](const LdaModel& model) { return to_rows(model.phi); })
      .def_property_readonly(
          "theta", [](const LdaModel& model) { return to_rows(model.theta); });

  m.def(
      "fit_lda",
      [](const PyBow& docs, int32_t vocab_size, int k, double alpha,
         double eta, int iterations, int burn_in, uint64_t seed) {
        return fit_lda(to_bows(docs), vocab_size,
                       make_lda_config(k, alpha, eta, iterations, burn_in,
                                       seed));
      },
      py::arg("docs"), py::arg("vocab_size"), py::arg("k"),
      py::arg("alpha") = 0.0, py::arg("eta") = 0.01,
      py::arg("iterations") = 200, py::arg("burn_in") = 100,
      py::arg("seed") = 42);

  m.def(
      "coherence",
      [](const LdaModel& model, const PyBow& docs, int topn, double epsilon) {
        const CoherenceResult r = coherence(model, to_bows(docs), topn, epsilon);
        return py::make_tuple(r.per_topic, r.mean, r.top_words);
      },
      py::arg("model"), py::arg("docs"), py::arg("topn") = 10,
      py::arg("epsilon") = 1e-12);

  m.def(
      "select_k",
      [](const PyBow& docs, int32_t vocab_size, const std::vector<int>& grid,
         double alpha, double eta, int iterations, int burn_in, uint64_t seed,
         int topn) {
        const SelectKResult r =
            select_k(to_bows(docs), vocab_size, grid,
                     make_lda_config(grid.empty() ? 1 : grid.front(), alpha,
                                     eta, iterations, burn_in, seed),
                     topn);
        return py::make_tuple(r.best_k, r.curve);
      },
      py::arg("docs"), py::arg("vocab_size"), py::arg("grid"),
      py::arg("alpha") = 0.0, py::arg("eta") = 0.01,
      py::arg("iterations") = 200, py::arg("burn_in") = 100,
      py::arg("seed") = 42, py::arg("topn") = 10);

  py::class_<DtmModel>(m, "DtmModel")
      .def_readonly("k", &DtmModel::k)
      .def_readonly("vocab_size", &DtmModel::vocab_size)
      .def_readonly("copied", &DtmModel::copied)
      .def_property_readonly("dates",
                             [](const DtmModel& model) {
                               std::vector<std::string> out;
                               for (const auto& d : model.dates)
                                 out.push_back(to_string(d));
                               return out;
                             })
      .def("slice",
           [](const DtmModel& model, size_t t) -> const LdaModel& {
             return model.slices.at(t);
           },
           py::arg("t"), py::return_value_policy::reference_internal)
      .def("__len__",
           [](const DtmModel& model) { return model.slices.size(); });

  m.def(
      "fit_dtm",
      [](const std::vector<std::pair<std::string, PyBow>>& slices,
         int32_t vocab_size, int k, double kappa, double rho, double alpha,
         double eta, int iterations, int burn_in, uint64_t seed) {
        std::vector<BowSlice> native;
        native.reserve(slices.size());
        for (const auto& [date, docs] : slices)
          native.push_back({parse_date(date), to_bows(docs)});
        DtmConfig cfg;
        cfg.k = k;
        cfg.kappa = kappa;
        cfg.rho = rho;
        cfg.lda = make_lda_config(k, alpha, eta, iterations, burn_in, seed);
        return fit_dtm(native, vocab_size, cfg);
      },
      py::arg("slices"), py::arg("vocab_size"), py::arg("k"),
      py::arg("kappa") = 1000.0, py::arg("rho") = 10.0, py::arg("alpha") = 0.0,
      py::arg("eta") = 0.01, py::arg("iterations") = 200,
      py::arg("burn_in") = 100, py::arg("seed") = 42);

  m.def("slice_seed", &slice_seed, py::arg("base"), py::arg("slice"));

  m.def(
      "assign_topics",
      [](const DtmModel& model) {
        std::vector<std::tuple<std::string, std::string, int32_t>> out;
        for (const auto& a : assign_topics(model))
          out.emplace_back(a.doc_id, to_string(a.day), a.topic);
        return out;
      },
      py::arg("model"));

  m.def(
      "topic_trajectory",
      [](const DtmModel& model, int topn) {
        std::vector<std::tuple<std::string, int32_t, int32_t, int32_t, double>>
            out;
        for (const auto& row : topic_trajectory(model, topn))
          out.emplace_back(to_string(row.day), row.topic, row.rank,
                           row.word_id, row.prob);
        return out;
      },
      py::arg("model"), py::arg("topn") = 10);

  m.def(
      "build_cube",
      [](const std::vector<std::tuple<std::string, std::string, int32_t>>&
             assignments,
         const std::map<std::string, std::pair<double, std::string>>& scores,
         const std::vector<std::string>& days, int k) {
        std::vector<Assignment> native;
        native.reserve(assignments.size());
        for (const auto& [id, day, topic] : assignments)
          native.push_back({id, parse_date(day), topic});
        std::map<std::string, SentimentScore> native_scores;
        for (const auto& [id, score] : scores)
          native_scores[id] = {score.first, label_from_string(score.second)};
        std::vector<CivilDate> native_days;
        native_days.reserve(days.size());
        for (const auto& day : days) native_days.push_back(parse_date(day));
        const SentimentCube cube =
            build_cube(native, native_scores, native_days, k);

        std::vector<std::vector<std::vector<int64_t>>> counts(
            cube.days.size());
        for (size_t d = 0; d < cube.days.size(); ++d) {
          counts[d].resize(static_cast<size_t>(k));
          for (int t = 0; t < k; ++t)
            counts[d][t] = {cube.at(d, t, Polarity::Positive),
                            cube.at(d, t, Polarity::Negative),
                            cube.at(d, t, Polarity::Neutral)};
        }
        return counts;
      },
      py::arg("assignments"), py::arg("scores"), py::arg("days"),
      py::arg("k"));
}
