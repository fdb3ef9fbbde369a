#ifndef NPCHUNK_KNN_HPP_
#define NPCHUNK_KNN_HPP_

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "npchunk/instances.hpp"

namespace npchunk {

struct KnnOptions {
  int k = 3;
  Weighting weighting = Weighting::kInfoGain;

  bool operator==(const KnnOptions &) const = default;
};

// Memory-based classifier with weighted-overlap distance
//
//   d(x, y) = sum_f w_f * [x_f != y_f]
//
// where w_f is the information gain (or gain ratio) of feature f on the
// training data. Prediction pools every stored instance whose distance is
// among the k smallest distinct distances and returns the most frequent class
// in that pool. Ties go to the class with the higher training frequency, then
// to the lexicographically smaller name.
class KnnModel {
 public:
  static KnnModel train(const InstanceSet &set, const KnnOptions &options = {});

  std::uint32_t predict(std::span<const std::uint32_t> values) const;

  // Class counts of the pooled neighbours.
  std::vector<std::size_t> neighbour_votes(std::span<const std::uint32_t> values) const;

  int k() const { return k_; }
  const std::vector<double> &weights() const { return weights_; }
  const ClassSet &classes() const { return classes_; }
  std::size_t instance_count() const;
  std::size_t exemplar_count() const { return exemplars_.size(); }

 private:
  friend struct ModelIO;

  // Identical feature vectors are stored once with per-class counts.
  struct Exemplar {
    std::vector<std::uint32_t> values;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> counts;  // class, n
  };

  void set_order();

  std::vector<Exemplar> exemplars_;
  std::vector<double> weights_;
  std::vector<std::size_t> order_;  // features by descending weight
  int k_ = 3;
  ClassSet classes_;
};

}  // namespace npchunk

#endif  // NPCHUNK_KNN_HPP_
