#ifndef NPCHUNK_MAXENT_HPP_
#define NPCHUNK_MAXENT_HPP_

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "npchunk/instances.hpp"

namespace npchunk {

struct MaxEntOptions {
  int iterations = 100;
  std::size_t cutoff = 2;  // features seen fewer times are dropped

  bool operator==(const MaxEntOptions &) const = default;
};

// Log-linear classifier over binary features (slot = value, class), fitted by
// generalized iterative scaling.
//
//   p(y | x) = exp(sum_i l_i f_i(x, y) + l_c f_c(x, y)) / Z(x)
//
// f_c is the correction feature C - sum_i f_i(x, y), where C is the largest
// active-feature count over training contexts and all classes. One GIS step
// is
//
//   l_i += log(E~[f_i] / E[f_i]) / C
//
// The correction weight is only updated while its empirical expectation is
// positive; leaving it fixed keeps the likelihood non-decreasing.
class MaxEntModel {
 public:
  static MaxEntModel train(const InstanceSet &set, const MaxEntOptions &options = {});

  std::uint32_t predict(std::span<const std::uint32_t> values) const;
  std::vector<double> distribution(std::span<const std::uint32_t> values) const;

  // Weight of (slot = value, cls); 0 when the feature was not kept.
  double weight(std::size_t slot, std::uint32_t value, std::uint32_t cls) const;
  double correction_weight() const { return correction_weight_; }
  double correction_constant() const { return correction_constant_; }
  std::size_t feature_count() const { return weights_.size(); }

  // Training-data log-likelihood (nats) before the first iteration and after
  // every iteration.
  const std::vector<double> &log_likelihood() const { return log_likelihood_; }
  const ClassSet &classes() const { return classes_; }

 private:
  friend struct ModelIO;

  using FeatureList = std::vector<std::pair<std::uint32_t, std::uint32_t>>;  // class, weight

  std::size_t predicate(std::size_t slot, std::uint32_t value) const {
    return offsets_[slot] + value;
  }
  void scores(std::span<const std::uint32_t> values, std::vector<double> &out) const;

  std::vector<std::size_t> offsets_;       // first predicate of each slot
  std::vector<std::size_t> value_counts_;  // values per slot
  std::vector<FeatureList> features_;      // per predicate
  std::vector<double> weights_;
  double correction_weight_ = 0.0;
  double correction_constant_ = 1.0;
  ClassSet classes_;
  std::vector<double> log_likelihood_;
};

}  // namespace npchunk

#endif  // NPCHUNK_MAXENT_HPP_
