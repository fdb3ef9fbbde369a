#ifndef NPCHUNK_CHUNKER_HPP_
#define NPCHUNK_CHUNKER_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "npchunk/tagger.hpp"

namespace npchunk {

// Second processing stage for the tagging representations. Stage 2 sees a
// narrower word/POS window plus the stage-1 tags around the focus word. Its
// training data carries stage-1 tags obtained by cross-prediction, so the
// tags it learns from have the same error profile as at test time.
struct CascadeConfig {
  bool enabled = false;
  int context_width = 2;  // words and POS +-width in stage 2
  int guide_width = 2;    // stage-1 tags +-width
  int folds = 5;
  std::uint64_t seed = 1;  // fold assignment only

  bool operator==(const CascadeConfig &) const = default;
};

// Random partition of sentence indices into min(folds, n) folds. Every index
// appears in exactly one fold; each fold is sorted.
std::vector<std::vector<std::size_t>> cross_folds(std::size_t n, int folds,
                                                  std::uint64_t seed);

// One learner trained on one output representation.
class ChunkModel {
 public:
  // Throws InvalidArgument when the cascade is enabled for O+C.
  static ChunkModel train(const LearnerConfig &config, Representation repr,
                          const Corpus &corpus, const CascadeConfig &cascade = {});

  ChunkOutput predict(const Sentence &sentence) const;
  std::vector<ChunkOutput> predict(const Corpus &corpus) const;

  // Stage-1 output only, for inspecting the cascade.
  ChunkOutput predict_first_stage(const Sentence &sentence) const;

  Representation representation() const { return repr_; }
  const LearnerConfig &config() const { return config_; }
  const CascadeConfig &cascade() const { return cascade_; }
  bool cascaded() const { return stage2_.has_value(); }
  const std::vector<Tagger> &first_stage() const { return stage1_; }

  void save(std::ostream &out) const;
  static ChunkModel load(std::istream &in);
  void save_file(const std::string &path) const;
  static ChunkModel load_file(const std::string &path);

 private:
  friend struct ModelIO;

  LearnerConfig config_;
  Representation repr_ = Representation::kIob1;
  CascadeConfig cascade_;
  std::vector<Tagger> stage1_;  // one tagger, or open and close taggers
  std::optional<Tagger> stage2_;
};

// Trains on `train` and tags `input` under `scheme`, with the second stage
// when `cascade.enabled`.
std::vector<TagSequence> run_cascade(const LearnerConfig &config, const Corpus &train,
                                     const Corpus &input, TagScheme scheme,
                                     const CascadeConfig &cascade);

// Context used by the second stage of a cascade built from `config`.
LearnerConfig second_stage_config(const LearnerConfig &config,
                                  const CascadeConfig &cascade);

}  // namespace npchunk

#endif  // NPCHUNK_CHUNKER_HPP_
