// npchunk: base noun phrase chunking toolkit.
//
//   npchunk --config exp.cfg [--stage learn] [--out DIR]
//   npchunk train --learner knn --representation IOB1 --train train.txt --model m.json
//   npchunk predict --model m.json --input test.txt
//   npchunk convert --to IOB2 --input gold.txt
//   npchunk combine --method tagpair --tune-gold tune.txt --tune a.tune b.tune --test a.test b.test
//   npchunk evaluate --gold test.txt --pred a.txt b.txt
//   npchunk generate --sentences 200 --seed 7

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <set>

#include "npchunk/chunker.hpp"
#include "npchunk/combination.hpp"
#include "npchunk/corpus.hpp"
#include "npchunk/evaluation.hpp"
#include "npchunk/experiment.hpp"
#include "npchunk/synthetic.hpp"

namespace fs = std::filesystem;
using namespace npchunk;

namespace {

// Writes to a file when a path is given, else to stdout.
class Sink {
 public:
  explicit Sink(const std::string &path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw Error("cannot open '" + path + "' for writing");
  }
  std::ostream &stream() { return file_ ? *file_ : std::cout; }
  void finish() {
    stream().flush();
    if (!stream()) throw Error("write failed");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::string system_name(const std::string &path) {
  std::string stem = fs::path(path).filename().string();
  for (const char *suffix : {".txt", ".test", ".tune"}) {
    const std::string s(suffix);
    if (stem.size() > s.size() && stem.ends_with(s)) stem.resize(stem.size() - s.size());
  }
  return stem;
}

StreamBundle read_bundle(const std::vector<std::string> &files, Corpus *tokens) {
  StreamBundle bundle;
  std::set<std::string> names;
  for (const auto &f : files) {
    SystemOutput out = read_system_output_file(f);
    std::string name = system_name(f);
    if (!names.insert(name).second) {
      throw InvalidArgument("two system files are both named '" + name + "'");
    }
    if (bundle.classifier_count() == 0) {
      if (tokens) *tokens = out.corpus;
    } else if (tokens) {
      check_aligned(*tokens, out.corpus);
    }
    bundle.add(std::move(name), std::move(out.streams));
  }
  return bundle;
}

struct TrainArgs {
  std::string learner = "knn";
  std::string representation = "IOB1";
  std::string train;
  std::string model;
  std::optional<int> k;
  std::string weighting;
  std::optional<int> iterations;
  std::optional<std::size_t> cutoff;
  std::optional<int> words;
  std::optional<int> pos;
  bool cascade = false;
  int folds = 5;
  std::uint64_t seed = 1;
};

int do_train(const TrainArgs &a) {
  LearnerConfig config = LearnerConfig::defaults(parse_learner(a.learner));
  if (a.k) config.knn.k = *a.k;
  if (!a.weighting.empty()) config.knn.weighting = parse_weighting(a.weighting);
  if (a.iterations) config.maxent.iterations = *a.iterations;
  if (a.cutoff) config.maxent.cutoff = *a.cutoff;
  if (a.words) {
    config.context.use_words = true;
    config.context.word_left = config.context.word_right = *a.words;
  }
  if (a.pos) config.context.pos_left = config.context.pos_right = *a.pos;
  CascadeConfig cascade;
  cascade.enabled = a.cascade;
  cascade.folds = a.folds;
  cascade.seed = a.seed;
  const Corpus corpus = read_corpus_file(a.train);
  if (!corpus.has_gold()) throw InvalidArgument("'" + a.train + "' lacks chunk tags");
  const ChunkModel model =
      ChunkModel::train(config, parse_representation(a.representation), corpus, cascade);
  model.save_file(a.model);
  return 0;
}

int do_predict(const std::string &model_path, const std::string &input,
               const std::string &output) {
  const ChunkModel model = ChunkModel::load_file(model_path);
  const Corpus corpus = read_corpus_file(input);
  Sink sink(output);
  write_outputs(corpus, model.predict(corpus), sink.stream());
  sink.finish();
  return 0;
}

int do_convert(const std::string &input, const std::string &from, const std::string &to,
               const std::string &output) {
  ReadOptions options;
  if (!from.empty()) options.representation = parse_representation(from);
  const Corpus corpus = read_corpus_file(input, options);
  Sink sink(output);
  write_corpus(corpus, parse_representation(to), sink.stream());
  sink.finish();
  return 0;
}

int do_combine(const std::string &method, const std::vector<std::string> &tune_files,
               const std::string &tune_gold, const std::vector<std::string> &test_files,
               std::optional<std::size_t> top, const std::string &output) {
  check_method(method);
  Corpus test_corpus;
  StreamBundle test = read_bundle(test_files, &test_corpus);
  const bool needs_tuning = method != "majority" || top.has_value();
  StreamBundle tune;
  Corpus gold_corpus;
  std::vector<PhraseSet> gold;
  if (needs_tuning) {
    if (tune_gold.empty() || tune_files.empty()) {
      throw InvalidArgument("method '" + method + "' needs --tune and --tune-gold");
    }
    gold_corpus = read_corpus_file(tune_gold);
    gold = gold_corpus.gold();
    Corpus tune_tokens;
    tune = read_bundle(tune_files, &tune_tokens);
    check_aligned(gold_corpus, tune_tokens);
    if (tune.names != test.names) {
      throw InvalidArgument("--tune and --test must list the same systems in the same order");
    }
    if (top) {
      const auto chosen = rank_and_select(tune, gold, *top).selected();
      tune = tune.select(chosen);
      test = test.select(chosen);
    }
  }
  std::vector<BracketStream> out =
      method == "majority" ? majority_vote(test)
                           : apply_method(method, tune, gold, gold_corpus, test, test_corpus);
  Sink sink(output);
  write_outputs(test_corpus, std::vector<ChunkOutput>(out.begin(), out.end()), sink.stream());
  sink.finish();
  return 0;
}

int do_evaluate(const std::string &gold_path, const std::vector<std::string> &preds,
                double beta, bool metrics, const std::string &output) {
  const Corpus gold_corpus = read_corpus_file(gold_path);
  const std::vector<PhraseSet> gold = gold_corpus.gold();
  std::vector<NamedReport> reports;
  for (const auto &p : preds) {
    SystemOutput out = read_system_output_file(p);
    check_aligned(gold_corpus, out.corpus);
    reports.push_back({system_name(p), evaluate(out.streams, gold, beta)});
  }
  Sink sink(output);
  sink.stream() << (metrics ? render_metrics(reports) : render_report(reports));
  sink.finish();
  return 0;
}

int do_generate(std::size_t sentences, std::uint64_t seed, double noise,
                const std::string &repr, const std::string &output) {
  const Corpus corpus = generate_corpus({sentences, seed, noise});
  Sink sink(output);
  write_corpus(corpus, parse_representation(repr), sink.stream());
  sink.finish();
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Base noun phrase chunking: train, combine and evaluate chunkers"};
  app.require_subcommand(0, 1);

  std::string config_path, stage_name_arg = "split", out_dir;
  bool quiet = false;
  app.add_option("--config", config_path, "Experiment config; runs the experiment");
  app.add_option("--stage", stage_name_arg, "Rerun from this stage (split, learn, combine, evaluate)");
  app.add_option("--out", out_dir, "Output directory (overrides the config)");
  app.add_flag("--quiet", quiet, "No progress output");

  TrainArgs ta;
  auto *train = app.add_subcommand("train", "Train one learner on one representation");
  train->add_option("--learner", ta.learner, "knn, igtree, maxent, tdidt or nb")
      ->capture_default_str();
  train->add_option("--representation,-r", ta.representation, "IOB1, IOB2, IOE1, IOE2 or O+C")
      ->capture_default_str();
  train->add_option("--train", ta.train, "Training corpus")->required();
  train->add_option("--model,-m", ta.model, "Model file to write")->required();
  train->add_option("--k", ta.k, "Neighbours (knn)");
  train->add_option("--weighting", ta.weighting, "ig, gr or none (knn)");
  train->add_option("--iterations", ta.iterations, "GIS iterations (maxent)");
  train->add_option("--cutoff", ta.cutoff, "Feature count cutoff (maxent)");
  train->add_option("--words", ta.words, "Word window each side");
  train->add_option("--pos", ta.pos, "POS window each side");
  train->add_flag("--cascade", ta.cascade, "Add the second processing stage");
  train->add_option("--folds", ta.folds, "Cross-prediction folds for the cascade")
      ->capture_default_str();
  train->add_option("--seed", ta.seed, "Fold assignment seed")->capture_default_str();

  std::string model_path, input, output;
  auto *predict = app.add_subcommand("predict", "Chunk a corpus with a trained model");
  predict->add_option("--model,-m", model_path, "Model file")->required();
  predict->add_option("--input,-i", input, "Corpus to chunk")->required();
  predict->add_option("--output,-o", output, "Output file (default stdout)");

  std::string from, to;
  auto *convert = app.add_subcommand("convert", "Rewrite chunk tags in another representation");
  convert->add_option("--input,-i", input, "Annotated corpus")->required();
  convert->add_option("--to", to, "Target representation")->required();
  convert->add_option("--from", from, "Source representation (default: detect)");
  convert->add_option("--output,-o", output, "Output file (default stdout)");

  std::string method, tune_gold;
  std::vector<std::string> tune_files, test_files;
  std::optional<std::size_t> top;
  auto *combine = app.add_subcommand("combine", "Combine classifier outputs");
  combine->add_option("--method", method, "majority, totprecision, tagprecision, "
                      "precisionrecall, tagpair, stack-mbl[-pos] or stack-tree[-pos]")
      ->required();
  combine->add_option("--test", test_files, "Classifier outputs to combine")->required();
  combine->add_option("--tune", tune_files, "Same classifiers' outputs on tuning data");
  combine->add_option("--tune-gold", tune_gold, "Annotated tuning data");
  combine->add_option("--top", top, "Use only the n best classifiers on tuning data");
  combine->add_option("--output,-o", output, "Output file (default stdout)");

  std::string gold_path;
  std::vector<std::string> preds;
  double beta = 1.0;
  bool metrics = false;
  auto *evaluate_cmd = app.add_subcommand("evaluate", "Score outputs against gold");
  evaluate_cmd->add_option("--gold", gold_path, "Annotated corpus")->required();
  evaluate_cmd->add_option("--pred", preds, "System outputs")->required();
  evaluate_cmd->add_option("--beta", beta, "F-measure beta")->capture_default_str();
  evaluate_cmd->add_flag("--metrics", metrics, "key=value lines instead of a table");
  evaluate_cmd->add_option("--output,-o", output, "Output file (default stdout)");

  std::size_t sentences = 200;
  std::uint64_t seed = 1;
  double noise = 0.05;
  std::string repr = "IOB1";
  auto *generate = app.add_subcommand("generate", "Write a synthetic annotated corpus");
  generate->add_option("--sentences", sentences)->capture_default_str();
  generate->add_option("--seed", seed)->capture_default_str();
  generate->add_option("--noise", noise, "Fraction of corrupted POS tags")
      ->capture_default_str();
  generate->add_option("--representation,-r", repr)->capture_default_str();
  generate->add_option("--output,-o", output, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*train) return do_train(ta);
    if (*predict) return do_predict(model_path, input, output);
    if (*convert) return do_convert(input, from, to, output);
    if (*combine) return do_combine(method, tune_files, tune_gold, test_files, top, output);
    if (*evaluate_cmd) return do_evaluate(gold_path, preds, beta, metrics, output);
    if (*generate) return do_generate(sentences, seed, noise, repr, output);
    if (config_path.empty()) {
      std::cerr << app.help();
      return 2;
    }
    ExperimentConfig config = load_config(config_path);
    if (!out_dir.empty()) config.out = out_dir;
    run_experiment(config, parse_stage(stage_name_arg), quiet ? nullptr : &std::cerr);
    if (!quiet) std::cerr << "report: " << (config.out / "report.txt").string() << '\n';
    return 0;
  } catch (const std::exception &e) {
    std::cerr << "npchunk: " << e.what() << '\n';
    return 1;
  }
}
