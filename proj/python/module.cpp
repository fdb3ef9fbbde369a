#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "npchunk/chunker.hpp"
#include "npchunk/combination.hpp"
#include "npchunk/evaluation.hpp"
#include "npchunk/experiment.hpp"
#include "npchunk/synthetic.hpp"

namespace py = pybind11;
using namespace npchunk;

namespace {

using SpanList = std::vector<std::pair<std::size_t, std::size_t>>;

PhraseSet to_phrases(const SpanList &spans) {
  std::vector<Span> out;
  for (const auto &[s, e] : spans) out.push_back({s, e});
  return PhraseSet(std::move(out));
}

SpanList from_phrases(const PhraseSet &p) {
  SpanList out;
  for (const Span &s : p) out.emplace_back(s.start, s.end);
  return out;
}

std::vector<std::string> symbols(const TagSequence &t) {
  std::vector<std::string> out;
  for (Tag tag : t.tags) out.emplace_back(1, static_cast<char>(tag));
  return out;
}

std::vector<std::string> codes(const BracketStream &b) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < b.size(); ++i) out.emplace_back(bracket_code(b.open[i], b.close[i]));
  return out;
}

BracketStream from_codes(const std::vector<std::string> &codes) {
  BracketStream b(codes.size());
  for (std::size_t i = 0; i < codes.size(); ++i) {
    bool o = false, c = false;
    if (!parse_bracket_code(codes[i], o, c)) {
      throw InvalidArgument("not a bracket code: '" + codes[i] + "'");
    }
    b.open[i] = o;
    b.close[i] = c;
  }
  return b;
}

py::dict as_dict(const EvalReport &r) {
  py::dict d;
  d["found_correct"] = r.found_correct;
  d["found_total"] = r.found_total;
  d["gold_total"] = r.gold_total;
  d["precision"] = r.precision;
  d["recall"] = r.recall;
  d["f_beta"] = r.f_beta;
  d["accuracy_open"] = r.accuracy_open;
  d["accuracy_close"] = r.accuracy_close;
  d["words"] = r.words;
  return d;
}

}  // namespace

PYBIND11_MODULE(_npchunk, m) {
  m.doc() = "Base noun phrase chunking: representations, learners, combination.";

  // Subclasses first so they are matched before the base.
  auto error = py::register_exception<Error>(m, "NpchunkError", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", error.ptr());
  py::register_exception<FormatError>(m, "FormatError", error.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", error.ptr());

  m.def("f_beta", &f_beta, py::arg("precision"), py::arg("recall"), py::arg("beta") = 1.0);

  m.def(
      "encode",
      [](const SpanList &spans, std::size_t length, const std::string &scheme) {
        return symbols(encode(PhraseSet::within(to_phrases(spans).spans(), length), length,
                              parse_scheme(scheme)));
      },
      py::arg("spans"), py::arg("length"), py::arg("scheme"),
      "Tags for inclusive (start, end) spans.");
  m.def(
      "decode",
      [](const std::vector<std::string> &tags, const std::string &scheme) {
        return from_phrases(decode(parse_tags(tags, parse_scheme(scheme))));
      },
      py::arg("tags"), py::arg("scheme"));
  m.def(
      "convert",
      [](const std::vector<std::string> &tags, const std::string &source,
         const std::string &target) {
        return symbols(convert(parse_tags(tags, parse_scheme(source)), parse_scheme(target)));
      },
      py::arg("tags"), py::arg("source"), py::arg("target"));
  m.def(
      "to_brackets",
      [](const SpanList &spans, std::size_t length) {
        return codes(to_brackets(PhraseSet::within(to_phrases(spans).spans(), length), length));
      },
      py::arg("spans"), py::arg("length"));
  m.def(
      "pair_brackets",
      [](const std::vector<std::string> &c) { return from_phrases(pair_brackets(from_codes(c))); },
      py::arg("codes"));

  m.def(
      "evaluate",
      [](const std::vector<SpanList> &pred, const std::vector<SpanList> &gold,
         const std::vector<std::size_t> &lengths, double beta) {
        std::vector<PhraseSet> p, g;
        for (const auto &s : pred) p.push_back(to_phrases(s));
        for (const auto &s : gold) g.push_back(to_phrases(s));
        return as_dict(evaluate(p, g, lengths, beta));
      },
      py::arg("pred"), py::arg("gold"), py::arg("lengths"), py::arg("beta") = 1.0);

  m.def(
      "vote",
      [](const std::string &method, const std::map<std::string, std::vector<std::vector<std::string>>> &test,
         const std::map<std::string, std::vector<std::vector<std::string>>> &tune,
         const std::vector<SpanList> &tune_gold) {
        auto bundle = [](const auto &named) {
          StreamBundle b;
          for (const auto &[name, sentences] : named) {
            std::vector<BracketStream> s;
            for (const auto &c : sentences) s.push_back(from_codes(c));
            b.add(name, std::move(s));
          }
          b.validate();
          return b;
        };
        const StreamBundle test_b = bundle(test);
        std::vector<PhraseSet> gold;
        for (const auto &s : tune_gold) gold.push_back(to_phrases(s));
        const VoteMethod vm = parse_vote_method(method);
        const auto out = vm == VoteMethod::kMajority
                             ? majority_vote(test_b)
                             : vote(test_b, estimate_weights(bundle(tune), gold, vm));
        std::vector<std::vector<std::string>> result;
        for (const auto &s : out) result.push_back(codes(s));
        return result;
      },
      py::arg("method"), py::arg("test"), py::arg("tune") = py::dict(),
      py::arg("tune_gold") = std::vector<SpanList>{},
      "Votes over bracket-code streams keyed by classifier name.");

  m.def(
      "generate_corpus",
      [](std::size_t sentences, std::uint64_t seed, double noise) {
        std::ostringstream out;
        write_corpus(generate_corpus({sentences, seed, noise}), Representation::kIob1, out);
        return out.str();
      },
      py::arg("sentences") = 200, py::arg("seed") = 1, py::arg("noise") = 0.05,
      "Synthetic corpus as IOB1 column text.");

  m.def(
      "run_experiment",
      [](const std::filesystem::path &config, const std::string &stage,
         std::optional<std::filesystem::path> out) {
        ExperimentConfig c = load_config(config);
        if (out) c.out = *out;
        const Stage from = parse_stage(stage);
        py::gil_scoped_release release;
        run_experiment(c, from);
      },
      py::arg("config"), py::arg("stage") = "split", py::arg("out") = py::none());

  py::class_<ChunkModel>(m, "ChunkModel")
      .def_static(
          "train",
          [](const std::string &learner, const std::string &representation,
             const std::filesystem::path &train, bool cascade) {
            const Corpus corpus = read_corpus_file(train.string());
            CascadeConfig cc;
            cc.enabled = cascade;
            py::gil_scoped_release release;
            return ChunkModel::train(LearnerConfig::defaults(parse_learner(learner)),
                                     parse_representation(representation), corpus, cc);
          },
          py::arg("learner"), py::arg("representation"), py::arg("train"),
          py::arg("cascade") = false)
      .def_static("load",
                  [](const std::filesystem::path &p) { return ChunkModel::load_file(p.string()); })
      .def("save", [](const ChunkModel &m, const std::filesystem::path &p) { m.save_file(p.string()); })
      .def_property_readonly("representation",
                             [](const ChunkModel &m) {
                               return std::string(representation_name(m.representation()));
                             })
      .def_property_readonly("cascaded", &ChunkModel::cascaded)
      .def(
          "predict_text",
          [](const ChunkModel &m, const std::string &text) {
            std::istringstream in(text);
            const Corpus corpus = read_corpus(in);
            std::ostringstream out;
            write_outputs(corpus, m.predict(corpus), out);
            return out.str();
          },
          py::arg("text"), "Tags column text; returns word, POS and output columns.");
}
