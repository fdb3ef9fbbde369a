#ifndef NPCHUNK_NAIVE_BAYES_HPP_
#define NPCHUNK_NAIVE_BAYES_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "npchunk/instances.hpp"

namespace npchunk {

// Baseline ensemble member: P(c) * prod_f P(x_f | c) with add-one smoothing
//
//   P(v | c) = (n(v, c) + 1) / (n(c) + V_f)
//
// where V_f counts the slot's training values plus the unseen value.
class NaiveBayesModel {
 public:
  static NaiveBayesModel train(const InstanceSet &set);

  std::uint32_t predict(std::span<const std::uint32_t> values) const;
  // Normalized class posterior.
  std::vector<double> posterior(std::span<const std::uint32_t> values) const;

  double prior(std::uint32_t cls) const;
  double conditional(std::size_t slot, std::uint32_t value, std::uint32_t cls) const;
  const ClassSet &classes() const { return classes_; }

 private:
  friend struct ModelIO;

  std::vector<double> log_scores(std::span<const std::uint32_t> values) const;

  ClassSet classes_;
  std::vector<std::size_t> value_counts_;  // V_f per slot
  // counts_[slot][value * n_classes + cls]
  std::vector<std::vector<std::size_t>> counts_;
};

}  // namespace npchunk

#endif  // NPCHUNK_NAIVE_BAYES_HPP_
