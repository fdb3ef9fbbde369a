#include "npchunk/instances.hpp"

#include <cmath>
#include <numeric>

#include "npchunk/error.hpp"
#include "npchunk/features.hpp"

namespace npchunk {

std::uint32_t ClassSet::add(std::string_view label, std::size_t count) {
  auto it = ids_.find(std::string(label));
  if (it != ids_.end()) {
    freq_[it->second] += count;
    return it->second;
  }
  const auto id = static_cast<std::uint32_t>(names_.size());
  names_.emplace_back(label);
  freq_.push_back(count);
  ids_.emplace(names_.back(), id);
  return id;
}

std::uint32_t ClassSet::find(std::string_view label) const {
  auto it = ids_.find(std::string(label));
  return it == ids_.end() ? static_cast<std::uint32_t>(names_.size()) : it->second;
}

std::size_t ClassSet::total() const {
  return std::accumulate(freq_.begin(), freq_.end(), std::size_t{0});
}

bool ClassSet::prefers(std::uint32_t a, std::uint32_t b) const {
  if (freq_[a] != freq_[b]) return freq_[a] > freq_[b];
  return names_[a] < names_[b];
}

ValueCodec::ValueCodec(std::size_t slots) : values_(slots), ids_(slots) {}

std::uint32_t ValueCodec::add(std::size_t slot, const std::string &value) {
  auto &ids = ids_[slot];
  auto it = ids.find(value);
  if (it != ids.end()) return it->second;
  values_[slot].push_back(value);
  const auto id = static_cast<std::uint32_t>(values_[slot].size());
  ids.emplace(value, id);
  return id;
}

std::uint32_t ValueCodec::find(std::size_t slot, const std::string &value) const {
  const auto &ids = ids_[slot];
  auto it = ids.find(value);
  return it == ids.end() ? kUnseen : it->second;
}

const std::string &ValueCodec::value(std::size_t slot, std::uint32_t id) const {
  static const std::string unknown(kUnknown);
  return id == kUnseen ? unknown : values_[slot][id - 1];
}

ValueCodec ValueCodec::from_values(std::vector<std::vector<std::string>> values) {
  ValueCodec codec(values.size());
  for (std::size_t s = 0; s < values.size(); ++s) {
    for (const std::string &v : values[s]) codec.add(s, v);
  }
  return codec;
}

InstanceSet InstanceSet::build(std::vector<std::string> slots,
                               const std::vector<std::vector<std::string>> &rows,
                               const std::vector<std::string> &labels) {
  if (rows.empty()) throw InvalidArgument("no training instances");
  if (rows.size() != labels.size()) {
    throw InvalidArgument("instance and label counts differ");
  }
  InstanceSet set;
  set.codec = ValueCodec(slots.size());
  set.rows.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != slots.size()) {
      throw InvalidArgument("instance arity does not match slot count");
    }
    Instance inst;
    inst.values.reserve(slots.size());
    for (std::size_t s = 0; s < slots.size(); ++s) {
      inst.values.push_back(set.codec.add(s, rows[i][s]));
    }
    inst.label = set.classes.add(labels[i]);
    set.rows.push_back(std::move(inst));
  }
  set.slots = std::move(slots);
  return set;
}

std::vector<std::uint32_t> InstanceSet::encode(
    const std::vector<std::string> &values) const {
  if (values.size() != slots.size()) {
    throw InvalidArgument("instance arity does not match slot count");
  }
  std::vector<std::uint32_t> ids(values.size());
  for (std::size_t s = 0; s < values.size(); ++s) ids[s] = codec.find(s, values[s]);
  return ids;
}

double entropy(std::span<const std::size_t> counts) {
  const double total =
      static_cast<double>(std::accumulate(counts.begin(), counts.end(), std::size_t{0}));
  if (total == 0.0) return 0.0;
  double h = 0.0;
  for (std::size_t c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / total;
    h -= p * std::log2(p);
  }
  return h;
}

double feature_weight(const InstanceSet &set, std::span<const std::uint32_t> rows,
                      std::size_t slot, Weighting weighting) {
  if (weighting == Weighting::kNone) return 1.0;
  const std::size_t n_classes = set.classes.size();
  const std::size_t n_values = set.codec.value_count(slot);
  std::vector<std::size_t> class_counts(n_classes, 0);
  std::vector<std::size_t> joint(n_values * n_classes, 0);
  std::vector<std::size_t> value_counts(n_values, 0);
  for (std::uint32_t r : rows) {
    const Instance &inst = set.rows[r];
    ++class_counts[inst.label];
    ++joint[inst.values[slot] * n_classes + inst.label];
    ++value_counts[inst.values[slot]];
  }
  const double total = static_cast<double>(rows.size());
  if (total == 0.0) return 0.0;
  double conditional = 0.0;
  for (std::size_t v = 0; v < n_values; ++v) {
    if (value_counts[v] == 0) continue;
    conditional += static_cast<double>(value_counts[v]) / total *
                   entropy(std::span<const std::size_t>(&joint[v * n_classes], n_classes));
  }
  // Clamp rounding noise so constant features get exactly zero.
  double gain = entropy(class_counts) - conditional;
  if (gain < 1e-12) gain = 0.0;
  if (weighting == Weighting::kInfoGain) return gain;
  const double split_info = entropy(value_counts);
  return split_info < 1e-12 ? 0.0 : gain / split_info;
}

std::vector<double> feature_weights(const InstanceSet &set, Weighting weighting) {
  std::vector<std::uint32_t> all(set.rows.size());
  std::iota(all.begin(), all.end(), 0u);
  std::vector<double> weights(set.slots.size());
  for (std::size_t s = 0; s < weights.size(); ++s) {
    weights[s] = feature_weight(set, all, s, weighting);
  }
  return weights;
}

Weighting parse_weighting(std::string_view name) {
  if (name == "ig" || name == "infogain") return Weighting::kInfoGain;
  if (name == "gr" || name == "gainratio") return Weighting::kGainRatio;
  if (name == "none") return Weighting::kNone;
  throw InvalidArgument("unknown feature weighting '" + std::string(name) + "'");
}

std::string_view weighting_name(Weighting weighting) {
  switch (weighting) {
    case Weighting::kInfoGain: return "ig";
    case Weighting::kGainRatio: return "gr";
    case Weighting::kNone: return "none";
  }
  return "?";
}

}  // namespace npchunk
