#include "npchunk/tdidt.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "npchunk/error.hpp"

namespace npchunk {

namespace {

struct Pending {
  std::uint32_t node;
  std::vector<std::uint32_t> rows;
  std::vector<bool> used;
};

}  // namespace

TdidtModel TdidtModel::train(const InstanceSet &set) {
  if (set.rows.empty()) throw InvalidArgument("no training instances");
  TdidtModel model;
  model.classes_ = set.classes;
  model.arity_ = set.slots.size();
  const std::size_t n_classes = set.classes.size();

  auto make_node = [&](const std::vector<std::uint32_t> &rows) {
    Node node;
    node.class_counts.assign(n_classes, 0);
    for (std::uint32_t r : rows) ++node.class_counts[set.rows[r].label];
    node.majority = set.classes.argmax(node.class_counts);
    model.nodes_.push_back(std::move(node));
    return static_cast<std::uint32_t>(model.nodes_.size() - 1);
  };

  std::vector<std::uint32_t> all(set.rows.size());
  std::iota(all.begin(), all.end(), 0u);
  std::vector<Pending> stack;
  const std::uint32_t root = make_node(all);
  stack.push_back({root, std::move(all), std::vector<bool>(model.arity_, false)});

  while (!stack.empty()) {
    Pending p = std::move(stack.back());
    stack.pop_back();
    const auto &counts = model.nodes_[p.node].class_counts;
    if (std::count_if(counts.begin(), counts.end(), [](std::size_t c) { return c > 0; }) <= 1) {
      continue;
    }
    int best = -1;
    double best_gain = 0.0;
    for (std::size_t f = 0; f < model.arity_; ++f) {
      if (p.used[f]) continue;
      const double gain = feature_weight(set, p.rows, f, Weighting::kInfoGain);
      if (gain > best_gain) {
        best_gain = gain;
        best = static_cast<int>(f);
      }
    }
    if (best < 0) continue;

    model.nodes_[p.node].feature = best;
    std::map<std::uint32_t, std::vector<std::uint32_t>> groups;
    for (std::uint32_t r : p.rows) {
      groups[set.rows[r].values[static_cast<std::size_t>(best)]].push_back(r);
    }
    std::vector<bool> used = p.used;
    used[static_cast<std::size_t>(best)] = true;
    for (auto &[value, rows] : groups) {
      const std::uint32_t child = make_node(rows);
      model.nodes_[p.node].children.emplace_back(value, child);
      stack.push_back({child, std::move(rows), used});
    }
  }
  return model;
}

std::uint32_t TdidtModel::predict(std::span<const std::uint32_t> values) const {
  if (values.size() != arity_) {
    throw InvalidArgument("instance arity does not match model");
  }
  std::uint32_t node = 0;
  while (nodes_[node].feature >= 0) {
    const auto &children = nodes_[node].children;
    const std::uint32_t value = values[static_cast<std::size_t>(nodes_[node].feature)];
    auto it = std::lower_bound(
        children.begin(), children.end(), value,
        [](const auto &child, std::uint32_t v) { return child.first < v; });
    if (it == children.end() || it->first != value) break;
    node = it->second;
  }
  return nodes_[node].majority;
}

std::size_t TdidtModel::depth() const {
  std::vector<std::size_t> level(nodes_.size(), 0);
  std::size_t deepest = 0;
  // Children always have larger indices than their parent.
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    for (const auto &[value, child] : nodes_[i].children) {
      level[child] = level[i] + 1;
      deepest = std::max(deepest, level[child]);
    }
  }
  return deepest;
}

}  // namespace npchunk
