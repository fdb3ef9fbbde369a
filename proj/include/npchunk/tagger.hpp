#ifndef NPCHUNK_TAGGER_HPP_
#define NPCHUNK_TAGGER_HPP_

// Sequence-level wrapper around the instance learners: turns a corpus into one
// instance per word, trains the configured learner and predicts left to right
// so that labels already assigned can serve as features.

#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "npchunk/corpus.hpp"
#include "npchunk/features.hpp"
#include "npchunk/igtree.hpp"
#include "npchunk/knn.hpp"
#include "npchunk/maxent.hpp"
#include "npchunk/naive_bayes.hpp"
#include "npchunk/tdidt.hpp"

namespace npchunk {

enum class LearnerKind { kKnn, kIgTree, kMaxEnt, kTdidt, kNaiveBayes };

std::string_view learner_name(LearnerKind kind);
LearnerKind parse_learner(std::string_view name);

struct LearnerConfig {
  LearnerKind kind = LearnerKind::kKnn;
  ContextSpec context;
  KnnOptions knn;
  MaxEntOptions maxent;

  // k-NN and IGTree: words and POS +-4, k = 3.
  // MaxEnt: words and POS -3..+2, two predicted tags, POS bigrams,
  //         tag bigram, tag x POS, bias; 100 GIS iterations, cutoff 2.
  // TDIDT: POS +-2 only.
  // Naive Bayes: words +-1, POS +-2.
  static LearnerConfig defaults(LearnerKind kind);

  bool operator==(const LearnerConfig &) const = default;
};

// What a tagger predicts: tags of a scheme, or one side of the brackets.
using Target = std::variant<TagScheme, BracketSide>;

std::string target_name(const Target &target);

// Per-word class labels of the gold annotation: tag symbols, or "1"/"0".
std::vector<std::string> gold_labels(const Sentence &sentence, const Target &target);

TagSequence labels_to_tags(std::span<const std::string> labels, TagScheme scheme);
std::vector<bool> labels_to_side(std::span<const std::string> labels);

using InstanceModel =
    std::variant<KnnModel, IgTreeModel, MaxEntModel, TdidtModel, NaiveBayesModel>;

class Tagger {
 public:
  // `guides` holds first-stage labels per sentence and is required when the
  // context uses guide slots. Throws InvalidArgument on an empty corpus or
  // missing gold.
  static Tagger train(const LearnerConfig &config, const Corpus &corpus,
                      const Target &target,
                      std::span<const std::vector<std::string>> guides = {});

  std::vector<std::string> predict_labels(const Sentence &sentence,
                                          std::span<const std::string> guide = {}) const;

  const LearnerConfig &config() const { return config_; }
  const Target &target() const { return target_; }
  const std::vector<std::string> &slots() const { return slots_; }
  const InstanceModel &model() const { return model_; }

 private:
  friend struct ModelIO;

  std::uint32_t classify(const std::vector<std::string> &values) const;

  LearnerConfig config_;
  Target target_ = TagScheme::kIob1;
  std::vector<std::string> slots_;
  ValueCodec codec_;
  ClassSet classes_;
  InstanceModel model_;
};

// Builds the instance set a tagger would train on.
InstanceSet build_instances(const Corpus &corpus, const ContextSpec &context,
                            const Target &target,
                            std::span<const std::vector<std::string>> guides = {});

Tagger train_knn(const Corpus &corpus, const Target &target,
                 const ContextSpec &context, const KnnOptions &options = {});
Tagger train_igtree(const Corpus &corpus, const Target &target,
                    const ContextSpec &context);
Tagger train_maxent(const Corpus &corpus, const Target &target,
                    const ContextSpec &context, const MaxEntOptions &options = {});
Tagger train_tdidt(const Corpus &corpus, const Target &target,
                   const ContextSpec &context);
Tagger train_nb(const Corpus &corpus, const Target &target,
                const ContextSpec &context);

}  // namespace npchunk

#endif  // NPCHUNK_TAGGER_HPP_
