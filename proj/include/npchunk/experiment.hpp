#ifndef NPCHUNK_EXPERIMENT_HPP_
#define NPCHUNK_EXPERIMENT_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "npchunk/chunker.hpp"
#include "npchunk/combination.hpp"
#include "npchunk/corpus.hpp"
#include "npchunk/error.hpp"

namespace npchunk {

struct LearnerSpec {
  std::string name;
  LearnerConfig config;
  std::vector<Representation> representations;
  CascadeConfig cascade;
  // Majority over the five representations; needs all five.
  bool internal = true;

  // Names of the classifiers this learner contributes to the ensemble: the
  // learner itself, or one per representation when not combined internally.
  std::vector<std::string> classifier_names() const;
};

struct ExperimentConfig {
  std::filesystem::path train;
  std::filesystem::path test;
  std::filesystem::path out;
  SplitSpec split;
  std::uint64_t seed = 1;
  double beta = 1.0;
  std::vector<LearnerSpec> learners;
  std::vector<std::string> methods;
  std::vector<std::size_t> top_n;

  std::vector<std::string> classifier_names() const;
};

// INI text:
//
//   [experiment]
//   train = data/train.txt        ; relative to the config file
//   test = data/test.txt
//   out = runs/fixture
//   train_fraction = 0.9
//   split_mode = prefix           ; or interleaved
//   seed = 1
//   methods = majority tagpair stack-mbl-pos
//   top_n = 3 4 5 6
//
//   [learner mbl]
//   algorithm = knn
//   k = 3
//   representations = all
//   cascade = true
//
// Throws ConfigError naming the offending key.
ExperimentConfig parse_config(std::istream &in, const std::filesystem::path &base_dir);
ExperimentConfig load_config(const std::filesystem::path &path);

// Combination methods: the five voting methods plus stack-mbl, stack-mbl-pos,
// stack-tree and stack-tree-pos.
std::vector<std::string> all_methods();
void check_method(std::string_view method);

// Trains the method on the tuning outputs and applies it to the test outputs.
std::vector<BracketStream> apply_method(std::string_view method, const StreamBundle &tune,
                                        std::span<const PhraseSet> tune_gold,
                                        const Corpus &tune_corpus, const StreamBundle &test,
                                        const Corpus &test_corpus);

enum class Stage { kSplit, kLearn, kCombine, kEvaluate };

inline constexpr Stage kAllStages[] = {Stage::kSplit, Stage::kLearn, Stage::kCombine,
                                       Stage::kEvaluate};

std::string_view stage_name(Stage stage);
Stage parse_stage(std::string_view name);

class StageError : public Error {
 public:
  StageError(Stage stage, const std::string &message)
      : Error("stage '" + std::string(stage_name(stage)) + "' failed: " + message),
        stage_(stage) {}
  Stage stage() const { return stage_; }

 private:
  Stage stage_;
};

// Output layout under config.out:
//   split/{train,tune}.txt
//   outputs/<learner>.<REPR>.{tune,test}.txt    per representation
//   streams/<classifier>.{tune,test}.txt        bracket codes
//   combined/<method>.<all|topN>.test.txt
//   models/<learner>.<REPR>.json                trained on all training data
//   report.txt, metrics.txt
// Stages from `from` on are rerun; earlier ones are read back from disk. On
// failure a FAILED file names the stage and StageError is thrown. Progress
// goes to `log` when given.
void run_experiment(const ExperimentConfig &config, Stage from = Stage::kSplit,
                    std::ostream *log = nullptr);

}  // namespace npchunk

#endif  // NPCHUNK_EXPERIMENT_HPP_
