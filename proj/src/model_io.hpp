#ifndef NPCHUNK_SRC_MODEL_IO_HPP_
#define NPCHUNK_SRC_MODEL_IO_HPP_

#include <iosfwd>

#include <json.hpp>

#include "npchunk/chunker.hpp"

namespace npchunk {

// JSON model files: {"format": "npchunk-model", "version": 1, ...}. Doubles
// are written with round-trip precision, so a loaded model predicts exactly
// like the saved one.
struct ModelIO {
  static constexpr int kVersion = 1;

  static void save(const ChunkModel &model, std::ostream &out);
  static ChunkModel load(std::istream &in);

  static nlohmann::json to_json(const Tagger &tagger);
  static Tagger tagger_from_json(const nlohmann::json &j);

  static nlohmann::json to_json(const KnnModel &m);
  static nlohmann::json to_json(const IgTreeModel &m);
  static nlohmann::json to_json(const MaxEntModel &m);
  static nlohmann::json to_json(const TdidtModel &m);
  static nlohmann::json to_json(const NaiveBayesModel &m);

  static KnnModel knn_from_json(const nlohmann::json &j, const ClassSet &classes);
  static IgTreeModel igtree_from_json(const nlohmann::json &j, const ClassSet &classes);
  static MaxEntModel maxent_from_json(const nlohmann::json &j, const ClassSet &classes);
  static TdidtModel tdidt_from_json(const nlohmann::json &j, const ClassSet &classes);
  static NaiveBayesModel nb_from_json(const nlohmann::json &j, const ClassSet &classes);
};

nlohmann::json to_json(const LearnerConfig &config);
LearnerConfig learner_config_from_json(const nlohmann::json &j);

}  // namespace npchunk

#endif  // NPCHUNK_SRC_MODEL_IO_HPP_
