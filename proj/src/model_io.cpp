#include "model_io.hpp"

#include <istream>
#include <ostream>

#include "npchunk/error.hpp"

namespace npchunk {

using nlohmann::json;

namespace {

json context_to_json(const ContextSpec &x) {
  return {{"use_words", x.use_words},     {"use_pos", x.use_pos},
          {"word_left", x.word_left},     {"word_right", x.word_right},
          {"pos_left", x.pos_left},       {"pos_right", x.pos_right},
          {"history", x.history},         {"guide_left", x.guide_left},
          {"guide_right", x.guide_right}, {"pos_bigrams", x.pos_bigrams},
          {"history_bigram", x.history_bigram},
          {"history_pos", x.history_pos}, {"bias", x.bias}};
}

ContextSpec context_from_json(const json &j) {
  ContextSpec x;
  x.use_words = j.at("use_words").get<bool>();
  x.use_pos = j.at("use_pos").get<bool>();
  x.word_left = j.at("word_left").get<int>();
  x.word_right = j.at("word_right").get<int>();
  x.pos_left = j.at("pos_left").get<int>();
  x.pos_right = j.at("pos_right").get<int>();
  x.history = j.at("history").get<int>();
  x.guide_left = j.at("guide_left").get<int>();
  x.guide_right = j.at("guide_right").get<int>();
  x.pos_bigrams = j.at("pos_bigrams").get<bool>();
  x.history_bigram = j.at("history_bigram").get<bool>();
  x.history_pos = j.at("history_pos").get<bool>();
  x.bias = j.at("bias").get<bool>();
  return x;
}

json classes_to_json(const ClassSet &classes) {
  return {{"names", classes.names()}, {"frequencies", classes.frequencies()}};
}

ClassSet classes_from_json(const json &j) {
  ClassSet classes;
  const auto names = j.at("names").get<std::vector<std::string>>();
  const auto freq = j.at("frequencies").get<std::vector<std::size_t>>();
  if (names.size() != freq.size()) throw Error("corrupt class table");
  for (std::size_t i = 0; i < names.size(); ++i) classes.add(names[i], freq[i]);
  return classes;
}

json target_to_json(const Target &target) { return target_name(target); }

Target target_from_json(const json &j) {
  const auto s = j.get<std::string>();
  if (s == "open") return BracketSide::kOpen;
  if (s == "close") return BracketSide::kClose;
  return parse_scheme(s);
}

json cascade_to_json(const CascadeConfig &c) {
  return {{"enabled", c.enabled},   {"context_width", c.context_width},
          {"guide_width", c.guide_width}, {"folds", c.folds},
          {"seed", c.seed}};
}

CascadeConfig cascade_from_json(const json &j) {
  CascadeConfig c;
  c.enabled = j.at("enabled").get<bool>();
  c.context_width = j.at("context_width").get<int>();
  c.guide_width = j.at("guide_width").get<int>();
  c.folds = j.at("folds").get<int>();
  c.seed = j.at("seed").get<std::uint64_t>();
  return c;
}

using Children = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

}  // namespace

json to_json(const LearnerConfig &config) {
  return {{"kind", learner_name(config.kind)},
          {"context", context_to_json(config.context)},
          {"k", config.knn.k},
          {"weighting", weighting_name(config.knn.weighting)},
          {"iterations", config.maxent.iterations},
          {"cutoff", config.maxent.cutoff}};
}

LearnerConfig learner_config_from_json(const json &j) {
  LearnerConfig c;
  c.kind = parse_learner(j.at("kind").get<std::string>());
  c.context = context_from_json(j.at("context"));
  c.knn.k = j.at("k").get<int>();
  c.knn.weighting = parse_weighting(j.at("weighting").get<std::string>());
  c.maxent.iterations = j.at("iterations").get<int>();
  c.maxent.cutoff = j.at("cutoff").get<std::size_t>();
  return c;
}

json ModelIO::to_json(const KnnModel &m) {
  json exemplars = json::array();
  for (const auto &e : m.exemplars_) exemplars.push_back({e.values, e.counts});
  return {{"k", m.k_}, {"weights", m.weights_}, {"exemplars", std::move(exemplars)}};
}

KnnModel ModelIO::knn_from_json(const json &j, const ClassSet &classes) {
  KnnModel m;
  m.k_ = j.at("k").get<int>();
  m.weights_ = j.at("weights").get<std::vector<double>>();
  for (const json &e : j.at("exemplars")) {
    m.exemplars_.push_back({e.at(0).get<std::vector<std::uint32_t>>(),
                            e.at(1).get<Children>()});
  }
  m.classes_ = classes;
  m.set_order();
  return m;
}

json ModelIO::to_json(const IgTreeModel &m) {
  json nodes = json::array();
  for (const auto &n : m.nodes_) nodes.push_back({n.default_class, n.children});
  return {{"order", m.order_}, {"nodes", std::move(nodes)}};
}

IgTreeModel ModelIO::igtree_from_json(const json &j, const ClassSet &classes) {
  IgTreeModel m;
  m.order_ = j.at("order").get<std::vector<std::size_t>>();
  for (const json &n : j.at("nodes")) {
    m.nodes_.push_back({n.at(0).get<std::uint32_t>(), n.at(1).get<Children>()});
  }
  m.classes_ = classes;
  return m;
}

json ModelIO::to_json(const MaxEntModel &m) {
  json features = json::array();
  for (std::size_t p = 0; p < m.features_.size(); ++p) {
    if (!m.features_[p].empty()) features.push_back({p, m.features_[p]});
  }
  return {{"offsets", m.offsets_},
          {"value_counts", m.value_counts_},
          {"features", std::move(features)},
          {"weights", m.weights_},
          {"correction_weight", m.correction_weight_},
          {"correction_constant", m.correction_constant_},
          {"log_likelihood", m.log_likelihood_}};
}

MaxEntModel ModelIO::maxent_from_json(const json &j, const ClassSet &classes) {
  MaxEntModel m;
  m.offsets_ = j.at("offsets").get<std::vector<std::size_t>>();
  m.value_counts_ = j.at("value_counts").get<std::vector<std::size_t>>();
  std::size_t n_predicates = 0;
  for (std::size_t v : m.value_counts_) n_predicates += v;
  m.features_.resize(n_predicates);
  for (const json &f : j.at("features")) {
    m.features_.at(f.at(0).get<std::size_t>()) = f.at(1).get<Children>();
  }
  m.weights_ = j.at("weights").get<std::vector<double>>();
  m.correction_weight_ = j.at("correction_weight").get<double>();
  m.correction_constant_ = j.at("correction_constant").get<double>();
  m.log_likelihood_ = j.at("log_likelihood").get<std::vector<double>>();
  m.classes_ = classes;
  return m;
}

json ModelIO::to_json(const TdidtModel &m) {
  json nodes = json::array();
  for (const auto &n : m.nodes_) {
    nodes.push_back({n.feature, n.majority, n.class_counts, n.children});
  }
  return {{"arity", m.arity_}, {"nodes", std::move(nodes)}};
}

TdidtModel ModelIO::tdidt_from_json(const json &j, const ClassSet &classes) {
  TdidtModel m;
  m.arity_ = j.at("arity").get<std::size_t>();
  for (const json &n : j.at("nodes")) {
    TdidtModel::Node node;
    node.feature = n.at(0).get<int>();
    node.majority = n.at(1).get<std::uint32_t>();
    node.class_counts = n.at(2).get<std::vector<std::size_t>>();
    node.children = n.at(3).get<Children>();
    m.nodes_.push_back(std::move(node));
  }
  m.classes_ = classes;
  return m;
}

json ModelIO::to_json(const NaiveBayesModel &m) {
  return {{"value_counts", m.value_counts_}, {"counts", m.counts_}};
}

NaiveBayesModel ModelIO::nb_from_json(const json &j, const ClassSet &classes) {
  NaiveBayesModel m;
  m.value_counts_ = j.at("value_counts").get<std::vector<std::size_t>>();
  m.counts_ = j.at("counts").get<std::vector<std::vector<std::size_t>>>();
  m.classes_ = classes;
  return m;
}

json ModelIO::to_json(const Tagger &tagger) {
  json model = std::visit([](const auto &m) { return ModelIO::to_json(m); }, tagger.model_);
  return {{"config", npchunk::to_json(tagger.config_)},
          {"target", target_to_json(tagger.target_)},
          {"slots", tagger.slots_},
          {"values", tagger.codec_.values()},
          {"classes", classes_to_json(tagger.classes_)},
          {"model", std::move(model)}};
}

Tagger ModelIO::tagger_from_json(const json &j) {
  Tagger t;
  t.config_ = learner_config_from_json(j.at("config"));
  t.target_ = target_from_json(j.at("target"));
  t.slots_ = j.at("slots").get<std::vector<std::string>>();
  t.codec_ = ValueCodec::from_values(
      j.at("values").get<std::vector<std::vector<std::string>>>());
  t.classes_ = classes_from_json(j.at("classes"));
  const json &m = j.at("model");
  switch (t.config_.kind) {
    case LearnerKind::kKnn: t.model_ = knn_from_json(m, t.classes_); break;
    case LearnerKind::kIgTree: t.model_ = igtree_from_json(m, t.classes_); break;
    case LearnerKind::kMaxEnt: t.model_ = maxent_from_json(m, t.classes_); break;
    case LearnerKind::kTdidt: t.model_ = tdidt_from_json(m, t.classes_); break;
    case LearnerKind::kNaiveBayes: t.model_ = nb_from_json(m, t.classes_); break;
  }
  return t;
}

void ModelIO::save(const ChunkModel &model, std::ostream &out) {
  json stage1 = json::array();
  for (const Tagger &t : model.stage1_) stage1.push_back(to_json(t));
  json j = {{"format", "npchunk-model"},
            {"version", kVersion},
            {"learner", npchunk::to_json(model.config_)},
            {"representation", representation_name(model.repr_)},
            {"cascade", cascade_to_json(model.cascade_)},
            {"stage1", std::move(stage1)},
            {"stage2", model.stage2_ ? to_json(*model.stage2_) : json(nullptr)}};
  out << j.dump() << '\n';
}

ChunkModel ModelIO::load(std::istream &in) {
  json j;
  try {
    in >> j;
    if (j.at("format") != "npchunk-model") throw Error("not an npchunk model file");
    if (j.at("version").get<int>() != kVersion) {
      throw Error("unsupported model version " + j.at("version").dump());
    }
    ChunkModel model;
    model.config_ = learner_config_from_json(j.at("learner"));
    model.repr_ = parse_representation(j.at("representation").get<std::string>());
    model.cascade_ = cascade_from_json(j.at("cascade"));
    for (const json &t : j.at("stage1")) model.stage1_.push_back(tagger_from_json(t));
    if (!j.at("stage2").is_null()) model.stage2_ = tagger_from_json(j.at("stage2"));
    const std::size_t expected = model.repr_ == Representation::kOpenClose ? 2 : 1;
    if (model.stage1_.size() != expected) throw Error("corrupt model: wrong tagger count");
    return model;
  } catch (const json::exception &e) {
    throw Error(std::string("corrupt model file: ") + e.what());
  }
}

}  // namespace npchunk
