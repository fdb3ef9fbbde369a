#include "npchunk/tagger.hpp"

#include "npchunk/error.hpp"

namespace npchunk {

std::string_view learner_name(LearnerKind kind) {
  switch (kind) {
    case LearnerKind::kKnn: return "knn";
    case LearnerKind::kIgTree: return "igtree";
    case LearnerKind::kMaxEnt: return "maxent";
    case LearnerKind::kTdidt: return "tdidt";
    case LearnerKind::kNaiveBayes: return "nb";
  }
  return "?";
}

LearnerKind parse_learner(std::string_view name) {
  if (name == "knn" || name == "mbl") return LearnerKind::kKnn;
  if (name == "igtree") return LearnerKind::kIgTree;
  if (name == "maxent") return LearnerKind::kMaxEnt;
  if (name == "tdidt" || name == "c5") return LearnerKind::kTdidt;
  if (name == "nb" || name == "naivebayes") return LearnerKind::kNaiveBayes;
  throw InvalidArgument("unknown learner '" + std::string(name) + "'");
}

LearnerConfig LearnerConfig::defaults(LearnerKind kind) {
  LearnerConfig c;
  c.kind = kind;
  ContextSpec &x = c.context;
  switch (kind) {
    case LearnerKind::kKnn:
    case LearnerKind::kIgTree:
      x.word_left = x.word_right = x.pos_left = x.pos_right = 4;
      break;
    case LearnerKind::kMaxEnt:
      x.word_left = x.pos_left = 3;
      x.word_right = x.pos_right = 2;
      x.history = 2;
      x.pos_bigrams = x.history_bigram = x.history_pos = x.bias = true;
      break;
    case LearnerKind::kTdidt:
      x.use_words = false;
      x.pos_left = x.pos_right = 2;
      break;
    case LearnerKind::kNaiveBayes:
      x.word_left = x.word_right = 1;
      x.pos_left = x.pos_right = 2;
      break;
  }
  return c;
}

std::string target_name(const Target &target) {
  if (const auto *scheme = std::get_if<TagScheme>(&target)) {
    return std::string(scheme_name(*scheme));
  }
  return std::get<BracketSide>(target) == BracketSide::kOpen ? "open" : "close";
}

std::vector<std::string> gold_labels(const Sentence &sentence, const Target &target) {
  if (!sentence.gold) throw InvalidArgument("training sentence has no gold annotation");
  std::vector<std::string> labels;
  labels.reserve(sentence.size());
  if (const auto *scheme = std::get_if<TagScheme>(&target)) {
    for (Tag t : encode(*sentence.gold, sentence.size(), *scheme).tags) {
      labels.emplace_back(1, static_cast<char>(t));
    }
  } else {
    const BracketStream stream = to_brackets(*sentence.gold, sentence.size());
    for (bool b : side_of(stream, std::get<BracketSide>(target))) {
      labels.emplace_back(b ? "1" : "0");
    }
  }
  return labels;
}

TagSequence labels_to_tags(std::span<const std::string> labels, TagScheme scheme) {
  return parse_tags(labels, scheme);
}

std::vector<bool> labels_to_side(std::span<const std::string> labels) {
  std::vector<bool> out;
  out.reserve(labels.size());
  for (const std::string &l : labels) {
    if (l != "0" && l != "1") throw InvalidArgument("bracket label must be 0 or 1");
    out.push_back(l == "1");
  }
  return out;
}

InstanceSet build_instances(const Corpus &corpus, const ContextSpec &context,
                            const Target &target,
                            std::span<const std::vector<std::string>> guides) {
  if (corpus.empty()) throw InvalidArgument("empty training corpus");
  if (context.uses_guide() && guides.size() != corpus.size()) {
    throw InvalidArgument("first-stage labels required for every training sentence");
  }
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> labels;
  rows.reserve(corpus.token_count());
  labels.reserve(corpus.token_count());
  for (std::size_t s = 0; s < corpus.size(); ++s) {
    const Sentence &sentence = corpus.sentences[s];
    std::vector<std::string> gold = gold_labels(sentence, target);
    std::span<const std::string> guide;
    if (context.uses_guide()) guide = guides[s];
    for (std::size_t i = 0; i < sentence.size(); ++i) {
      rows.push_back(extract_values(sentence, i, context, gold, guide));
    }
    for (std::string &l : gold) labels.push_back(std::move(l));
  }
  return InstanceSet::build(context.slot_names(), rows, labels);
}

Tagger Tagger::train(const LearnerConfig &config, const Corpus &corpus,
                     const Target &target,
                     std::span<const std::vector<std::string>> guides) {
  InstanceSet set = build_instances(corpus, config.context, target, guides);
  Tagger tagger;
  tagger.config_ = config;
  tagger.target_ = target;
  switch (config.kind) {
    case LearnerKind::kKnn:
      tagger.model_ = KnnModel::train(set, config.knn);
      break;
    case LearnerKind::kIgTree:
      tagger.model_ = IgTreeModel::train(set);
      break;
    case LearnerKind::kMaxEnt:
      tagger.model_ = MaxEntModel::train(set, config.maxent);
      break;
    case LearnerKind::kTdidt:
      tagger.model_ = TdidtModel::train(set);
      break;
    case LearnerKind::kNaiveBayes:
      tagger.model_ = NaiveBayesModel::train(set);
      break;
  }
  tagger.slots_ = std::move(set.slots);
  tagger.codec_ = std::move(set.codec);
  tagger.classes_ = std::move(set.classes);
  return tagger;
}

std::uint32_t Tagger::classify(const std::vector<std::string> &values) const {
  std::vector<std::uint32_t> ids(values.size());
  for (std::size_t s = 0; s < values.size(); ++s) ids[s] = codec_.find(s, values[s]);
  return std::visit([&](const auto &m) { return m.predict(ids); }, model_);
}

std::vector<std::string> Tagger::predict_labels(const Sentence &sentence,
                                                std::span<const std::string> guide) const {
  std::vector<std::string> labels;
  labels.reserve(sentence.size());
  for (std::size_t i = 0; i < sentence.size(); ++i) {
    const std::vector<std::string> values =
        extract_values(sentence, i, config_.context, labels, guide);
    labels.push_back(classes_.name(classify(values)));
  }
  return labels;
}

namespace {

LearnerConfig config_for(LearnerKind kind, const ContextSpec &context) {
  LearnerConfig c;
  c.kind = kind;
  c.context = context;
  return c;
}

}  // namespace

Tagger train_knn(const Corpus &corpus, const Target &target,
                 const ContextSpec &context, const KnnOptions &options) {
  LearnerConfig c = config_for(LearnerKind::kKnn, context);
  c.knn = options;
  return Tagger::train(c, corpus, target);
}

Tagger train_igtree(const Corpus &corpus, const Target &target,
                    const ContextSpec &context) {
  return Tagger::train(config_for(LearnerKind::kIgTree, context), corpus, target);
}

Tagger train_maxent(const Corpus &corpus, const Target &target,
                    const ContextSpec &context, const MaxEntOptions &options) {
  LearnerConfig c = config_for(LearnerKind::kMaxEnt, context);
  c.maxent = options;
  return Tagger::train(c, corpus, target);
}

Tagger train_tdidt(const Corpus &corpus, const Target &target,
                   const ContextSpec &context) {
  return Tagger::train(config_for(LearnerKind::kTdidt, context), corpus, target);
}

Tagger train_nb(const Corpus &corpus, const Target &target,
                const ContextSpec &context) {
  return Tagger::train(config_for(LearnerKind::kNaiveBayes, context), corpus, target);
}

}  // namespace npchunk
