#include "npchunk/maxent.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "npchunk/error.hpp"

namespace npchunk {

MaxEntModel MaxEntModel::train(const InstanceSet &set, const MaxEntOptions &options) {
  if (set.rows.empty()) throw InvalidArgument("no training instances");
  if (options.iterations < 0) throw InvalidArgument("iteration count must not be negative");

  MaxEntModel model;
  model.classes_ = set.classes;
  const std::size_t n_classes = set.classes.size();
  std::size_t n_predicates = 0;
  for (std::size_t s = 0; s < set.slots.size(); ++s) {
    model.offsets_.push_back(n_predicates);
    model.value_counts_.push_back(set.codec.value_count(s));
    n_predicates += set.codec.value_count(s);
  }
  model.features_.resize(n_predicates);

  // Feature counts double as empirical expectations (times N).
  std::map<std::pair<std::size_t, std::uint32_t>, std::size_t> counts;
  for (const Instance &inst : set.rows) {
    for (std::size_t s = 0; s < inst.values.size(); ++s) {
      ++counts[{model.predicate(s, inst.values[s]), inst.label}];
    }
  }
  std::vector<double> empirical;
  for (const auto &[key, n] : counts) {
    if (n < options.cutoff) continue;
    model.features_[key.first].emplace_back(
        key.second, static_cast<std::uint32_t>(model.weights_.size()));
    model.weights_.push_back(0.0);
    empirical.push_back(static_cast<double>(n));
  }

  // Active-feature counts per event and class.
  const std::size_t n_events = set.rows.size();
  std::vector<std::vector<std::size_t>> predicates(n_events);
  std::vector<double> active(n_events * n_classes, 0.0);
  double c_max = 0.0;
  for (std::size_t e = 0; e < n_events; ++e) {
    const Instance &inst = set.rows[e];
    for (std::size_t s = 0; s < inst.values.size(); ++s) {
      const std::size_t p = model.predicate(s, inst.values[s]);
      if (model.features_[p].empty()) continue;
      predicates[e].push_back(p);
      for (const auto &[cls, w] : model.features_[p]) active[e * n_classes + cls] += 1.0;
    }
    for (std::size_t c = 0; c < n_classes; ++c) {
      c_max = std::max(c_max, active[e * n_classes + c]);
    }
  }
  const double C = c_max > 0.0 ? c_max : 1.0;
  model.correction_constant_ = C;
  double empirical_correction = 0.0;
  for (std::size_t e = 0; e < n_events; ++e) {
    empirical_correction += C - active[e * n_classes + set.rows[e].label];
  }

  std::vector<double> expected(model.weights_.size());
  std::vector<double> score(n_classes);
  auto pass = [&](bool accumulate) {
    std::fill(expected.begin(), expected.end(), 0.0);
    double expected_correction = 0.0;
    double ll = 0.0;
    for (std::size_t e = 0; e < n_events; ++e) {
      for (std::size_t c = 0; c < n_classes; ++c) {
        score[c] = model.correction_weight_ * (C - active[e * n_classes + c]);
      }
      for (std::size_t p : predicates[e]) {
        for (const auto &[cls, w] : model.features_[p]) score[cls] += model.weights_[w];
      }
      const double top = *std::max_element(score.begin(), score.end());
      double z = 0.0;
      for (double &s : score) {
        s = std::exp(s - top);
        z += s;
      }
      for (double &s : score) s /= z;
      ll += std::log(score[set.rows[e].label]);
      if (!accumulate) continue;
      for (std::size_t p : predicates[e]) {
        for (const auto &[cls, w] : model.features_[p]) expected[w] += score[cls];
      }
      for (std::size_t c = 0; c < n_classes; ++c) {
        expected_correction += score[c] * (C - active[e * n_classes + c]);
      }
    }
    return std::make_pair(ll, expected_correction);
  };

  for (int it = 0; it < options.iterations; ++it) {
    const auto [ll, expected_correction] = pass(true);
    model.log_likelihood_.push_back(ll);
    for (std::size_t w = 0; w < model.weights_.size(); ++w) {
      model.weights_[w] += std::log(empirical[w] / expected[w]) / C;
    }
    if (empirical_correction > 0.0 && expected_correction > 0.0) {
      model.correction_weight_ +=
          std::log(empirical_correction / expected_correction) / C;
    }
  }
  model.log_likelihood_.push_back(pass(false).first);
  return model;
}

void MaxEntModel::scores(std::span<const std::uint32_t> values,
                         std::vector<double> &out) const {
  if (values.size() != offsets_.size()) {
    throw InvalidArgument("instance arity does not match model");
  }
  const std::size_t n_classes = classes_.size();
  std::vector<double> active(n_classes, 0.0);
  out.assign(n_classes, 0.0);
  for (std::size_t s = 0; s < values.size(); ++s) {
    if (values[s] >= value_counts_[s]) continue;
    for (const auto &[cls, w] : features_[predicate(s, values[s])]) {
      out[cls] += weights_[w];
      active[cls] += 1.0;
    }
  }
  for (std::size_t c = 0; c < n_classes; ++c) {
    out[c] += correction_weight_ * (correction_constant_ - active[c]);
  }
}

std::vector<double> MaxEntModel::distribution(std::span<const std::uint32_t> values) const {
  std::vector<double> s;
  scores(values, s);
  const double top = *std::max_element(s.begin(), s.end());
  double z = 0.0;
  for (double &v : s) {
    v = std::exp(v - top);
    z += v;
  }
  for (double &v : s) v /= z;
  return s;
}

std::uint32_t MaxEntModel::predict(std::span<const std::uint32_t> values) const {
  std::vector<double> s;
  scores(values, s);
  return classes_.argmax(s);
}

double MaxEntModel::weight(std::size_t slot, std::uint32_t value,
                           std::uint32_t cls) const {
  if (slot >= offsets_.size() || value >= value_counts_[slot]) return 0.0;
  for (const auto &[c, w] : features_[predicate(slot, value)]) {
    if (c == cls) return weights_[w];
  }
  return 0.0;
}

}  // namespace npchunk
