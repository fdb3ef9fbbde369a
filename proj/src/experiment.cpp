#include "npchunk/experiment.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "npchunk/evaluation.hpp"

namespace npchunk {

namespace fs = std::filesystem;
namespace pt = boost::property_tree;

namespace {

std::vector<std::string> words_of(const std::string &text) {
  std::istringstream in(text);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

class Section {
 public:
  Section(const pt::ptree &tree, std::string name) : tree_(tree), name_(std::move(name)) {}

  std::optional<std::string> get(const std::string &key) {
    used_.insert(key);
    const auto v = tree_.get_optional<std::string>(pt::ptree::path_type(key, '\0'));
    if (!v) return std::nullopt;
    return *v;
  }

  std::string require(const std::string &key) {
    auto v = get(key);
    if (!v || v->empty()) fail(key, "is required");
    return *v;
  }

  template <typename T>
  std::optional<T> number(const std::string &key) {
    const auto v = get(key);
    if (!v) return std::nullopt;
    std::istringstream in(*v);
    T x{};
    if (!(in >> x) || !(in >> std::ws).eof()) fail(key, "expects a number, got '" + *v + "'");
    return x;
  }

  std::optional<bool> flag(const std::string &key) {
    const auto v = get(key);
    if (!v) return std::nullopt;
    if (*v == "true" || *v == "yes" || *v == "1" || *v == "on") return true;
    if (*v == "false" || *v == "no" || *v == "0" || *v == "off") return false;
    fail(key, "expects true or false, got '" + *v + "'");
  }

  void check_unused() const {
    for (const auto &[key, value] : tree_) {
      if (!used_.count(key)) fail(key, "is not a known setting");
    }
  }

  [[noreturn]] void fail(const std::string &key, const std::string &what) const {
    throw ConfigError("[" + name_ + "] " + key + " " + what);
  }

 private:
  const pt::ptree &tree_;
  std::string name_;
  std::set<std::string> used_;
};

LearnerSpec parse_learner_section(const std::string &name, const pt::ptree &tree,
                                  std::uint64_t seed) {
  Section s(tree, "learner " + name);
  LearnerSpec spec;
  spec.name = name;
  try {
    spec.config = LearnerConfig::defaults(parse_learner(s.require("algorithm")));
    ContextSpec &x = spec.config.context;
    if (auto v = s.get("words")) {
      if (*v == "none") {
        x.use_words = false;
      } else {
        const auto w = s.number<int>("words");
        x.use_words = true;
        x.word_left = x.word_right = *w;
      }
    }
    if (auto v = s.get("pos")) {
      if (*v == "none") {
        x.use_pos = false;
      } else {
        const auto w = s.number<int>("pos");
        x.use_pos = true;
        x.pos_left = x.pos_right = *w;
      }
    }
    if (auto v = s.number<int>("word_left")) x.word_left = *v;
    if (auto v = s.number<int>("word_right")) x.word_right = *v;
    if (auto v = s.number<int>("pos_left")) x.pos_left = *v;
    if (auto v = s.number<int>("pos_right")) x.pos_right = *v;
    if (auto v = s.number<int>("history")) x.history = *v;
    for (int w : {x.word_left, x.word_right, x.pos_left, x.pos_right, x.history}) {
      if (w < 0) throw ConfigError("[learner " + name + "] context widths must be >= 0");
    }
    if (auto v = s.number<int>("k")) spec.config.knn.k = *v;
    if (auto v = s.get("weighting")) spec.config.knn.weighting = parse_weighting(*v);
    if (auto v = s.number<int>("iterations")) spec.config.maxent.iterations = *v;
    if (auto v = s.number<std::size_t>("cutoff")) spec.config.maxent.cutoff = *v;

    const std::string reprs = s.get("representations").value_or("all");
    if (reprs == "all") {
      spec.representations.assign(std::begin(kAllRepresentations),
                                  std::end(kAllRepresentations));
    } else {
      for (const auto &r : words_of(reprs)) {
        const Representation rep = parse_representation(r);
        if (std::find(spec.representations.begin(), spec.representations.end(), rep) !=
            spec.representations.end()) {
          s.fail("representations", "lists " + r + " twice");
        }
        spec.representations.push_back(rep);
      }
      std::sort(spec.representations.begin(), spec.representations.end());
    }
    if (spec.representations.empty()) s.fail("representations", "is empty");

    spec.cascade.enabled = s.flag("cascade").value_or(false);
    spec.cascade.seed = seed;
    if (auto v = s.number<int>("cascade_width")) spec.cascade.context_width = *v;
    if (auto v = s.number<int>("cascade_tags")) spec.cascade.guide_width = *v;
    if (auto v = s.number<int>("folds")) spec.cascade.folds = *v;

    spec.internal = s.flag("internal").value_or(spec.representations.size() == 5);
    if (spec.internal && spec.representations.size() != 5) {
      s.fail("internal", "needs all five representations");
    }
  } catch (const ConfigError &) {
    throw;
  } catch (const Error &e) {
    throw ConfigError("[learner " + name + "] " + e.what());
  }
  s.check_unused();
  return spec;
}

void write_atomic(const fs::path &path, const std::string &content) {
  fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw Error("cannot open '" + tmp.string() + "' for writing");
    out << content;
    if (!out.flush()) throw Error("write to '" + tmp.string() + "' failed");
  }
  fs::rename(tmp, path);
}

std::string outputs_text(const Corpus &corpus, const std::vector<ChunkOutput> &outputs) {
  std::ostringstream out;
  write_outputs(corpus, outputs, out);
  return out.str();
}

std::string streams_text(const Corpus &corpus, const std::vector<BracketStream> &streams) {
  return outputs_text(corpus, std::vector<ChunkOutput>(streams.begin(), streams.end()));
}

std::string corpus_text(const Corpus &corpus) {
  std::ostringstream out;
  write_corpus(corpus, Representation::kIob1, out);
  return out.str();
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<std::string> selections(const ExperimentConfig &config, std::size_t classifiers,
                                    std::vector<std::string> *notes) {
  std::vector<std::string> out{"all"};
  for (std::size_t n : config.top_n) {
    if (n < 1 || n > classifiers) {
      if (notes) {
        notes->push_back("top" + std::to_string(n) + " skipped: " +
                         std::to_string(classifiers) + " classifiers available");
      }
      continue;
    }
    out.push_back("top" + std::to_string(n));
  }
  return out;
}

struct Paths {
  fs::path root;
  fs::path split(const std::string &part) const { return root / "split" / (part + ".txt"); }
  fs::path output(const std::string &name, const std::string &part) const {
    return root / "outputs" / (name + "." + part + ".txt");
  }
  // Classifier bracket codes; kept apart from the tag outputs because a
  // single-representation classifier shares its name with the tag file.
  fs::path stream(const std::string &name, const std::string &part) const {
    return root / "streams" / (name + "." + part + ".txt");
  }
  fs::path model(const std::string &name) const {
    return root / "models" / (name + ".json");
  }
  fs::path combined(const std::string &method, const std::string &sel) const {
    return root / "combined" / (method + "." + sel + ".test.txt");
  }
  fs::path ranking() const { return root / "combined" / "ranking.txt"; }
};

std::string repr_key(const LearnerSpec &l, Representation r) {
  return l.name + "." + std::string(representation_name(r));
}

Corpus read_gold(const fs::path &path, const char *what) {
  Corpus c = read_corpus_file(path.string());
  if (c.empty()) throw Error(std::string(what) + " '" + path.string() + "' is empty");
  if (!c.has_gold()) {
    throw Error(std::string(what) + " '" + path.string() + "' lacks chunk tags");
  }
  return c;
}

StreamBundle read_bundle(const std::vector<std::string> &names, const Paths &paths,
                         const std::string &part, const Corpus &reference) {
  StreamBundle bundle;
  for (const auto &name : names) {
    SystemOutput out = read_system_output_file(paths.stream(name, part).string());
    try {
      check_aligned(reference, out.corpus);
    } catch (const InvalidArgument &e) {
      throw Error("'" + paths.stream(name, part).string() + "': " + e.what());
    }
    bundle.add(name, std::move(out.streams));
  }
  return bundle;
}

void stage_split(const ExperimentConfig &config, const Paths &paths) {
  const Corpus train = read_gold(config.train, "training file");
  SplitSpec spec = config.split;
  spec.require_both = true;
  const auto [fit, tune] = split(train, spec);
  write_atomic(paths.split("train"), corpus_text(fit));
  write_atomic(paths.split("tune"), corpus_text(tune));
}

void stage_learn(const ExperimentConfig &config, const Paths &paths, std::ostream *log) {
  const Corpus full = read_gold(config.train, "training file");
  const Corpus fit = read_corpus_file(paths.split("train").string());
  const Corpus tune = read_corpus_file(paths.split("tune").string());
  const Corpus test = read_corpus_file(config.test.string());
  if (test.empty()) throw Error("test file '" + config.test.string() + "' is empty");

  for (const LearnerSpec &l : config.learners) {
    std::map<Representation, std::pair<std::vector<ChunkOutput>, std::vector<ChunkOutput>>>
        results;
    for (Representation r : l.representations) {
      if (log) *log << "[learn] " << repr_key(l, r) << '\n' << std::flush;
      CascadeConfig cascade = l.cascade;
      if (r == Representation::kOpenClose) cascade.enabled = false;
      const ChunkModel tuner = ChunkModel::train(l.config, r, fit, cascade);
      const ChunkModel model = ChunkModel::train(l.config, r, full, cascade);
      auto tune_out = tuner.predict(tune);
      auto test_out = model.predict(test);
      write_atomic(paths.output(repr_key(l, r), "tune"), outputs_text(tune, tune_out));
      write_atomic(paths.output(repr_key(l, r), "test"), outputs_text(test, test_out));
      std::ostringstream saved;
      model.save(saved);
      write_atomic(paths.model(repr_key(l, r)), saved.str());
      results[r] = {std::move(tune_out), std::move(test_out)};
    }

    auto brackets = [](const std::vector<ChunkOutput> &outputs) {
      std::vector<BracketStream> s;
      s.reserve(outputs.size());
      for (const auto &o : outputs) s.push_back(output_brackets(o));
      return s;
    };
    if (l.internal) {
      for (const char *part : {"tune", "test"}) {
        const bool is_tune = std::string_view(part) == "tune";
        const Corpus &corpus = is_tune ? tune : test;
        std::vector<BracketStream> combined;
        for (std::size_t s = 0; s < corpus.size(); ++s) {
          std::vector<ChunkOutput> five;
          for (const auto &[r, outs] : results) {
            five.push_back(is_tune ? outs.first[s] : outs.second[s]);
          }
          combined.push_back(combine_internal(five));
        }
        write_atomic(paths.stream(l.name, part), streams_text(corpus, combined));
      }
    } else {
      const auto names = l.classifier_names();
      std::size_t i = 0;
      for (const auto &[r, outs] : results) {
        write_atomic(paths.stream(names[i], "tune"), streams_text(tune, brackets(outs.first)));
        write_atomic(paths.stream(names[i], "test"), streams_text(test, brackets(outs.second)));
        ++i;
      }
    }
  }
}

void stage_combine(const ExperimentConfig &config, const Paths &paths, std::ostream *log) {
  const Corpus tune = read_gold(paths.split("tune"), "tuning split");
  const Corpus test = read_corpus_file(config.test.string());
  const auto names = config.classifier_names();
  const StreamBundle tune_bundle = read_bundle(names, paths, "tune", tune);
  const StreamBundle test_bundle = read_bundle(names, paths, "test", test);
  const std::vector<PhraseSet> gold = tune.gold();

  const Ranking ranking = rank_and_select(tune_bundle, gold, names.size());
  std::string ranked;
  for (std::size_t i = 0; i < ranking.names.size(); ++i) {
    ranked += ranking.names[i] + ' ' + format_double(ranking.f_scores[i]) + '\n';
  }
  write_atomic(paths.ranking(), ranked);

  for (const std::string &sel : selections(config, names.size(), nullptr)) {
    std::vector<std::string> chosen = names;
    if (sel != "all") {
      chosen = rank_and_select(tune_bundle, gold, std::stoul(sel.substr(3))).selected();
    }
    const StreamBundle t = tune_bundle.select(chosen);
    const StreamBundle x = test_bundle.select(chosen);
    for (const std::string &method : config.methods) {
      if (log) *log << "[combine] " << method << '.' << sel << '\n' << std::flush;
      const auto out = apply_method(method, t, gold, tune, x, test);
      write_atomic(paths.combined(method, sel), streams_text(test, out));
    }
  }
}

void stage_evaluate(const ExperimentConfig &config, const Paths &paths) {
  const Corpus test = read_gold(config.test, "test file");
  const Corpus tune = read_corpus_file(paths.split("tune").string());
  const Corpus fit = read_corpus_file(paths.split("train").string());
  const std::vector<PhraseSet> gold = test.gold();

  auto score = [&](const fs::path &file, const std::string &name) {
    SystemOutput out = read_system_output_file(file.string());
    check_aligned(test, out.corpus);
    return NamedReport{name, evaluate(out.streams, gold, config.beta)};
  };

  std::vector<NamedReport> per_repr, classifiers, combined, all;
  for (const LearnerSpec &l : config.learners) {
    for (Representation r : l.representations) {
      per_repr.push_back(score(paths.output(repr_key(l, r), "test"), repr_key(l, r)));
    }
  }
  const auto names = config.classifier_names();
  for (const auto &n : names) classifiers.push_back(score(paths.stream(n, "test"), n));
  std::vector<std::string> notes;
  for (const std::string &sel : selections(config, names.size(), &notes)) {
    for (const std::string &method : config.methods) {
      combined.push_back(score(paths.combined(method, sel), method + "." + sel));
    }
  }

  std::ifstream ranked(paths.ranking());
  if (!ranked) throw Error("missing ranking file '" + paths.ranking().string() + "'");
  std::ostringstream ranking;
  std::size_t place = 0;
  for (std::string name, f; ranked >> name >> f;) {
    char line[128];
    std::snprintf(line, sizeof line, "%2zu. %-24s F %6.2f\n", ++place, name.c_str(),
                  std::stod(f) * 100.0);
    ranking << line;
  }

  std::ostringstream report;
  report << "npchunk experiment report\n"
         << "training sentences: " << fit.size() + tune.size() << " (" << fit.size()
         << " train, " << tune.size() << " tune, "
         << (config.split.mode == SplitMode::kPrefix ? "prefix" : "interleaved")
         << " split, fraction " << config.split.train_fraction << ")\n"
         << "test sentences: " << test.size() << "\n"
         << "tuning outputs come from learners trained on the train part only; "
            "test outputs from learners trained on all training sentences\n"
         << "beta: " << config.beta << "\n\n";
  report << "Representations (test)\n" << render_report(per_repr) << '\n';
  report << "Classifiers (test)\n" << render_report(classifiers) << '\n';
  report << "Ranking (tuning)\n" << ranking.str() << '\n';
  report << "Combinations (test)\n" << render_report(combined);
  for (const auto &n : notes) report << "note: " << n << '\n';
  write_atomic(paths.root / "report.txt", report.str());

  // Section prefixes keep keys unique: a single-representation classifier
  // shares its name with its representation.
  auto add = [&all](const std::vector<NamedReport> &rows, const std::string &prefix) {
    for (NamedReport r : rows) {
      r.name = prefix + r.name;
      all.push_back(std::move(r));
    }
  };
  add(per_repr, "repr.");
  add(classifiers, "classifier.");
  add(combined, "combined.");
  write_atomic(paths.root / "metrics.txt", render_metrics(all));
}

}  // namespace

std::vector<std::string> LearnerSpec::classifier_names() const {
  if (internal || representations.size() == 1) return {name};
  std::vector<std::string> out;
  for (Representation r : representations) out.push_back(repr_key(*this, r));
  return out;
}

std::vector<std::string> ExperimentConfig::classifier_names() const {
  std::vector<std::string> out;
  for (const auto &l : learners) {
    for (auto &n : l.classifier_names()) out.push_back(std::move(n));
  }
  return out;
}

ExperimentConfig parse_config(std::istream &in, const fs::path &base_dir) {
  pt::ptree tree;
  try {
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error &e) {
    throw ConfigError(e.what());
  }

  ExperimentConfig config;
  const auto experiment = tree.get_child_optional(pt::ptree::path_type("experiment", '\0'));
  if (!experiment) throw ConfigError("missing [experiment] section");
  Section s(*experiment, "experiment");
  auto resolve = [&](const std::string &p) {
    const fs::path path(p);
    return path.is_absolute() ? path : (base_dir / path).lexically_normal();
  };
  config.train = resolve(s.require("train"));
  config.test = resolve(s.require("test"));
  if (auto v = s.get("out")) config.out = resolve(*v);
  if (auto v = s.number<double>("train_fraction")) config.split.train_fraction = *v;
  if (!(config.split.train_fraction > 0.0 && config.split.train_fraction < 1.0)) {
    s.fail("train_fraction", "must lie strictly between 0 and 1");
  }
  if (auto v = s.get("split_mode")) {
    try {
      config.split.mode = parse_split_mode(*v);
    } catch (const Error &e) {
      s.fail("split_mode", e.what());
    }
  }
  if (auto v = s.number<std::uint64_t>("seed")) config.seed = *v;
  if (auto v = s.number<double>("beta")) config.beta = *v;
  if (!(config.beta > 0.0)) s.fail("beta", "must be positive");
  config.methods = words_of(s.get("methods").value_or("majority"));
  if (config.methods.size() == 1 && config.methods[0] == "all") config.methods = all_methods();
  for (const auto &m : config.methods) {
    try {
      check_method(m);
    } catch (const Error &e) {
      s.fail("methods", e.what());
    }
  }
  if (std::set<std::string>(config.methods.begin(), config.methods.end()).size() !=
      config.methods.size()) {
    s.fail("methods", "lists a method twice");
  }
  for (const auto &n : words_of(s.get("top_n").value_or(""))) {
    std::size_t value = 0;
    try {
      std::size_t used = 0;
      value = std::stoul(n, &used);
      if (used != n.size() || n[0] == '-') throw std::invalid_argument(n);
    } catch (const std::exception &) {
      s.fail("top_n", "expects positive integers, got '" + n + "'");
    }
    config.top_n.push_back(value);
  }
  s.check_unused();

  for (const auto &[section, child] : tree) {
    if (section == "experiment") continue;
    if (section.rfind("learner ", 0) != 0) {
      throw ConfigError("unknown section [" + section + "]");
    }
    const std::string name = section.substr(8);
    if (name.empty() || name.find_first_of(" \t./") != std::string::npos) {
      throw ConfigError("bad learner name in [" + section + "]");
    }
    config.learners.push_back(parse_learner_section(name, child, config.seed));
  }
  if (config.learners.empty()) throw ConfigError("no [learner NAME] sections");
  const auto names = config.classifier_names();
  if (std::set<std::string>(names.begin(), names.end()).size() != names.size()) {
    throw ConfigError("classifier names collide");
  }
  return config;
}

ExperimentConfig load_config(const fs::path &path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  try {
    return parse_config(in, path.parent_path());
  } catch (const ConfigError &e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::vector<std::string> all_methods() {
  std::vector<std::string> out;
  for (VoteMethod m : kAllVoteMethods) out.emplace_back(vote_method_name(m));
  for (const char *s : {"stack-mbl", "stack-mbl-pos", "stack-tree", "stack-tree-pos"}) {
    out.emplace_back(s);
  }
  return out;
}

void check_method(std::string_view method) {
  const auto all = all_methods();
  if (std::find(all.begin(), all.end(), method) == all.end()) {
    throw InvalidArgument("unknown combination method '" + std::string(method) + "'");
  }
}

std::vector<BracketStream> apply_method(std::string_view method, const StreamBundle &tune,
                                        std::span<const PhraseSet> tune_gold,
                                        const Corpus &tune_corpus, const StreamBundle &test,
                                        const Corpus &test_corpus) {
  check_method(method);
  if (method.rfind("stack-", 0) == 0) {
    StackOptions options;
    options.learner = method.find("tree") != std::string_view::npos
                          ? MetaLearner::kDecisionTree
                          : MetaLearner::kMemoryBased;
    options.features = method.ends_with("-pos") ? StackFeatures::kTagsPos
                                                : StackFeatures::kTagsOnly;
    const StackedModel model = stack_train(tune, tune_gold, options, &tune_corpus);
    return stack_apply(model, test, &test_corpus);
  }
  const VoteMethod m = parse_vote_method(method);
  if (m == VoteMethod::kMajority) return majority_vote(test);
  return vote(test, estimate_weights(tune, tune_gold, m));
}

std::string_view stage_name(Stage stage) {
  switch (stage) {
    case Stage::kSplit: return "split";
    case Stage::kLearn: return "learn";
    case Stage::kCombine: return "combine";
    case Stage::kEvaluate: return "evaluate";
  }
  return "?";
}

Stage parse_stage(std::string_view name) {
  for (Stage s : kAllStages) {
    if (name == stage_name(s)) return s;
  }
  throw InvalidArgument("unknown stage '" + std::string(name) +
                        "' (expected split, learn, combine or evaluate)");
}

void run_experiment(const ExperimentConfig &config, Stage from, std::ostream *log) {
  if (config.out.empty()) throw ConfigError("no output directory given");
  const Paths paths{config.out};
  fs::create_directories(paths.root);
  const fs::path marker = paths.root / "FAILED";
  fs::remove(marker);
  for (Stage stage : kAllStages) {
    if (stage < from) continue;
    if (log) *log << "[" << stage_name(stage) << "]\n" << std::flush;
    try {
      switch (stage) {
        case Stage::kSplit: stage_split(config, paths); break;
        case Stage::kLearn: stage_learn(config, paths, log); break;
        case Stage::kCombine: stage_combine(config, paths, log); break;
        case Stage::kEvaluate: stage_evaluate(config, paths); break;
      }
    } catch (const std::exception &e) {
      const StageError error(stage, e.what());
      std::ofstream(marker) << "stage: " << stage_name(stage) << "\nerror: " << e.what()
                            << '\n';
      throw error;
    }
  }
}

}  // namespace npchunk
