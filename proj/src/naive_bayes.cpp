#include "npchunk/naive_bayes.hpp"

#include <algorithm>
#include <cmath>

#include "npchunk/error.hpp"

namespace npchunk {

NaiveBayesModel NaiveBayesModel::train(const InstanceSet &set) {
  if (set.rows.empty()) throw InvalidArgument("no training instances");
  NaiveBayesModel model;
  model.classes_ = set.classes;
  const std::size_t n_classes = set.classes.size();
  for (std::size_t s = 0; s < set.slots.size(); ++s) {
    model.value_counts_.push_back(set.codec.value_count(s));
    model.counts_.emplace_back(set.codec.value_count(s) * n_classes, 0);
  }
  for (const Instance &inst : set.rows) {
    for (std::size_t s = 0; s < inst.values.size(); ++s) {
      ++model.counts_[s][inst.values[s] * n_classes + inst.label];
    }
  }
  return model;
}

double NaiveBayesModel::prior(std::uint32_t cls) const {
  return static_cast<double>(classes_.frequency(cls)) /
         static_cast<double>(classes_.total());
}

double NaiveBayesModel::conditional(std::size_t slot, std::uint32_t value,
                                    std::uint32_t cls) const {
  const std::size_t n_classes = classes_.size();
  const std::size_t n =
      value < value_counts_[slot] ? counts_[slot][value * n_classes + cls] : 0;
  return static_cast<double>(n + 1) /
         static_cast<double>(classes_.frequency(cls) + value_counts_[slot]);
}

std::vector<double> NaiveBayesModel::log_scores(
    std::span<const std::uint32_t> values) const {
  if (values.size() != counts_.size()) {
    throw InvalidArgument("instance arity does not match model");
  }
  std::vector<double> scores(classes_.size());
  for (std::uint32_t c = 0; c < scores.size(); ++c) {
    double s = std::log(prior(c));
    for (std::size_t f = 0; f < values.size(); ++f) {
      s += std::log(conditional(f, values[f], c));
    }
    scores[c] = s;
  }
  return scores;
}

std::vector<double> NaiveBayesModel::posterior(
    std::span<const std::uint32_t> values) const {
  std::vector<double> scores = log_scores(values);
  const double top = *std::max_element(scores.begin(), scores.end());
  double z = 0.0;
  for (double &s : scores) {
    s = std::exp(s - top);
    z += s;
  }
  for (double &s : scores) s /= z;
  return scores;
}

std::uint32_t NaiveBayesModel::predict(std::span<const std::uint32_t> values) const {
  return classes_.argmax(log_scores(values));
}

}  // namespace npchunk
