#ifndef NPCHUNK_COMBINATION_HPP_
#define NPCHUNK_COMBINATION_HPP_

// Combining chunker outputs. All combination happens on open/close bracket
// streams: every output is converted to brackets first, each side of each
// word is decided separately, and the combined streams are turned back into
// phrases with pair_brackets.

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "npchunk/chunk.hpp"
#include "npchunk/corpus.hpp"
#include "npchunk/igtree.hpp"
#include "npchunk/knn.hpp"

namespace npchunk {

// Outputs of several classifiers over the same sentences.
struct StreamBundle {
  std::vector<std::string> names;
  std::vector<std::vector<BracketStream>> streams;  // [classifier][sentence]

  std::size_t classifier_count() const { return names.size(); }
  std::size_t sentence_count() const { return streams.empty() ? 0 : streams[0].size(); }

  void add(std::string name, std::vector<BracketStream> outputs);

  // Throws InvalidArgument unless every classifier covers the same sentence
  // count and lengths, names are unique, and open/close lengths agree.
  void validate() const;

  // Sub-bundle in the order given.
  StreamBundle select(std::span<const std::string> names) const;
};

// Majority vote over the five representations of one learner for one
// sentence. Requires exactly one output each of IOB1, IOB2, IOE1, IOE2 and
// O+C.
BracketStream combine_internal(std::span<const ChunkOutput> outputs);

enum class VoteMethod { kMajority, kTotPrecision, kTagPrecision, kPrecisionRecall, kTagPair };

inline constexpr VoteMethod kAllVoteMethods[] = {
    VoteMethod::kMajority, VoteMethod::kTotPrecision, VoteMethod::kTagPrecision,
    VoteMethod::kPrecisionRecall, VoteMethod::kTagPair};

std::string_view vote_method_name(VoteMethod method);
VoteMethod parse_vote_method(std::string_view name);

// Tuning-data statistics of one classifier on one side. Arrays are indexed by
// the boolean value (0 = no bracket, 1 = bracket).
struct SideStats {
  double accuracy = 0.0;
  std::array<double, 2> precision{};
  std::array<double, 2> recall{};
  std::array<bool, 2> precision_backed_off{};
  std::array<bool, 2> recall_backed_off{};
};

// For one classifier pair and side: the distribution of the gold value given
// the two outputs (x, y), at index 2x + y.
struct PairTable {
  std::array<std::array<double, 2>, 4> distribution{};
  std::array<std::size_t, 4> count{};
};

struct VoteWeights {
  VoteMethod method = VoteMethod::kMajority;
  std::vector<std::string> names;
  std::vector<std::array<SideStats, 2>> stats;  // [classifier][side]
  // [pair_index(i, j)][side] for i < j
  std::vector<std::array<PairTable, 2>> pairs;

  static std::size_t pair_index(std::size_t i, std::size_t j, std::size_t n);
};

// Zero-denominator precision or recall cells back off to the classifier's
// side accuracy. Throws InvalidArgument on an empty tuning set or
// misalignment.
VoteWeights estimate_weights(const StreamBundle &tune, std::span<const PhraseSet> gold,
                             VoteMethod method);

// Per word and side, every classifier adds weight to candidate values and the
// heavier value wins; ties give no bracket.
//   Majority         1 to its output
//   TotPrecision     its side accuracy to its output
//   TagPrecision     precision of its output value to that value
//   PrecisionRecall  as TagPrecision, plus 1 - recall of the other value to
//                    the other value
//   TagPair          every pair (i, j) adds the gold distribution stored for
//                    its output pair; unseen output pairs fall back to the
//                    two TagPrecision votes
std::vector<BracketStream> vote(const StreamBundle &bundle, const VoteWeights &weights);

// Plain majority, no tuning data needed.
std::vector<BracketStream> majority_vote(const StreamBundle &bundle);

enum class MetaLearner { kMemoryBased, kDecisionTree };
enum class StackFeatures { kTagsOnly, kTagsPos };

struct StackOptions {
  MetaLearner learner = MetaLearner::kMemoryBased;
  StackFeatures features = StackFeatures::kTagsOnly;
  int k = 1;  // memory-based meta-learner only
};

// A second-level classifier over classifier outputs: one instance per word
// and side, features = the classifiers' booleans (plus the focus POS tag),
// class = the gold boolean.
class StackedModel {
 public:
  const StackOptions &options() const { return options_; }
  const std::vector<std::string> &names() const { return names_; }
  std::size_t instance_count() const { return instances_; }
  std::size_t arity() const;

 private:
  friend StackedModel stack_train(const StreamBundle &, std::span<const PhraseSet>,
                                  const StackOptions &, const Corpus *);
  friend std::vector<BracketStream> stack_apply(const StackedModel &,
                                                const StreamBundle &, const Corpus *);

  struct Side {
    ValueCodec codec;
    std::variant<KnnModel, IgTreeModel> model;
    std::vector<std::string> slots;
  };

  StackOptions options_;
  std::vector<std::string> names_;
  std::vector<Side> sides_;  // open, close
  std::size_t instances_ = 0;
};

// `corpus` supplies POS tags and may be null for kTagsOnly.
StackedModel stack_train(const StreamBundle &tune, std::span<const PhraseSet> gold,
                         const StackOptions &options, const Corpus *corpus);
std::vector<BracketStream> stack_apply(const StackedModel &model,
                                       const StreamBundle &test, const Corpus *corpus);

// Classifiers ordered by tuning F (descending; ties by name).
struct Ranking {
  std::vector<std::string> names;
  std::vector<double> f_scores;
  std::size_t n = 0;

  std::vector<std::string> selected() const {
    return {names.begin(), names.begin() + static_cast<std::ptrdiff_t>(n)};
  }
};

// Throws InvalidArgument unless 1 <= n <= classifier count.
Ranking rank_and_select(const StreamBundle &tune, std::span<const PhraseSet> gold,
                        std::size_t n);

}  // namespace npchunk

#endif  // NPCHUNK_COMBINATION_HPP_
