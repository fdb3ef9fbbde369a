#include "npchunk/chunker.hpp"

#include <algorithm>
#include <fstream>
#include <random>

#include "model_io.hpp"
#include "npchunk/error.hpp"

namespace npchunk {

std::vector<std::vector<std::size_t>> cross_folds(std::size_t n, int folds,
                                                  std::uint64_t seed) {
  if (folds < 1) throw InvalidArgument("fold count must be positive");
  const std::size_t k = std::min(n, static_cast<std::size_t>(folds));
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  // Fisher-Yates on raw engine output; std::shuffle is not portable across
  // standard libraries.
  std::mt19937_64 rng(seed);
  for (std::size_t i = n; i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(order[i - 1], order[j]);
  }
  std::vector<std::vector<std::size_t>> out(k);
  for (std::size_t i = 0; i < n; ++i) out[i % k].push_back(order[i]);
  for (auto &fold : out) std::sort(fold.begin(), fold.end());
  return out;
}

LearnerConfig second_stage_config(const LearnerConfig &config,
                                  const CascadeConfig &cascade) {
  LearnerConfig c = config;
  ContextSpec &x = c.context;
  x.word_left = std::min(x.word_left, cascade.context_width);
  x.word_right = std::min(x.word_right, cascade.context_width);
  x.pos_left = std::min(x.pos_left, cascade.context_width);
  x.pos_right = std::min(x.pos_right, cascade.context_width);
  x.guide_left = x.guide_right = cascade.guide_width;
  return c;
}

ChunkModel ChunkModel::train(const LearnerConfig &config, Representation repr,
                             const Corpus &corpus, const CascadeConfig &cascade) {
  if (corpus.empty()) throw InvalidArgument("empty training corpus");
  ChunkModel model;
  model.config_ = config;
  model.repr_ = repr;
  model.cascade_ = cascade;

  if (repr == Representation::kOpenClose) {
    if (cascade.enabled) {
      throw InvalidArgument("the second processing stage applies only to tagging schemes");
    }
    model.stage1_.push_back(Tagger::train(config, corpus, BracketSide::kOpen));
    model.stage1_.push_back(Tagger::train(config, corpus, BracketSide::kClose));
    return model;
  }

  const TagScheme scheme = parse_scheme(representation_name(repr));
  model.stage1_.push_back(Tagger::train(config, corpus, scheme));
  if (!cascade.enabled) return model;
  if (cascade.guide_width < 1) {
    throw InvalidArgument("second stage needs a positive tag window");
  }
  if (corpus.size() < 2) {
    throw InvalidArgument("second stage needs at least two training sentences");
  }

  std::vector<std::vector<std::string>> guides(corpus.size());
  const auto folds = cross_folds(corpus.size(), cascade.folds, cascade.seed);
  for (const auto &fold : folds) {
    Corpus rest;
    std::size_t next = 0;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      if (next < fold.size() && fold[next] == i) {
        ++next;
        continue;
      }
      rest.sentences.push_back(corpus.sentences[i]);
    }
    const Tagger held_out = Tagger::train(config, rest, scheme);
    for (std::size_t i : fold) guides[i] = held_out.predict_labels(corpus.sentences[i]);
  }
  model.stage2_ = Tagger::train(second_stage_config(config, cascade), corpus, scheme, guides);
  return model;
}

ChunkOutput ChunkModel::predict_first_stage(const Sentence &sentence) const {
  if (repr_ == Representation::kOpenClose) {
    BracketStream stream;
    stream.open = labels_to_side(stage1_[0].predict_labels(sentence));
    stream.close = labels_to_side(stage1_[1].predict_labels(sentence));
    return stream;
  }
  const TagScheme scheme = std::get<TagScheme>(stage1_[0].target());
  return labels_to_tags(stage1_[0].predict_labels(sentence), scheme);
}

ChunkOutput ChunkModel::predict(const Sentence &sentence) const {
  if (!stage2_) return predict_first_stage(sentence);
  const TagScheme scheme = std::get<TagScheme>(stage1_[0].target());
  const std::vector<std::string> first = stage1_[0].predict_labels(sentence);
  return labels_to_tags(stage2_->predict_labels(sentence, first), scheme);
}

std::vector<ChunkOutput> ChunkModel::predict(const Corpus &corpus) const {
  std::vector<ChunkOutput> out;
  out.reserve(corpus.size());
  for (const Sentence &s : corpus.sentences) out.push_back(predict(s));
  return out;
}

void ChunkModel::save(std::ostream &out) const { ModelIO::save(*this, out); }

ChunkModel ChunkModel::load(std::istream &in) { return ModelIO::load(in); }

void ChunkModel::save_file(const std::string &path) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  save(out);
  if (!out) throw Error("write to '" + path + "' failed");
}

ChunkModel ChunkModel::load_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open model '" + path + "'");
  return load(in);
}

std::vector<TagSequence> run_cascade(const LearnerConfig &config, const Corpus &train,
                                     const Corpus &input, TagScheme scheme,
                                     const CascadeConfig &cascade) {
  const ChunkModel model =
      ChunkModel::train(config, to_representation(scheme), train, cascade);
  std::vector<TagSequence> out;
  out.reserve(input.size());
  for (const Sentence &s : input.sentences) {
    out.push_back(std::get<TagSequence>(model.predict(s)));
  }
  return out;
}

}  // namespace npchunk
