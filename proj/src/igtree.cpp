#include "npchunk/igtree.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "npchunk/error.hpp"

namespace npchunk {

namespace {

struct Pending {
  std::uint32_t node;
  std::size_t depth;
  std::vector<std::uint32_t> rows;
};

}  // namespace

IgTreeModel IgTreeModel::train(const InstanceSet &set) {
  if (set.rows.empty()) throw InvalidArgument("no training instances");
  IgTreeModel model;
  model.classes_ = set.classes;
  const std::vector<double> gains = feature_weights(set, Weighting::kInfoGain);
  model.order_.resize(gains.size());
  std::iota(model.order_.begin(), model.order_.end(), std::size_t{0});
  std::stable_sort(model.order_.begin(), model.order_.end(),
                   [&](std::size_t a, std::size_t b) { return gains[a] > gains[b]; });

  const std::size_t n_classes = set.classes.size();
  auto majority = [&](const std::vector<std::uint32_t> &rows, bool &pure) {
    std::vector<std::size_t> counts(n_classes, 0);
    for (std::uint32_t r : rows) ++counts[set.rows[r].label];
    pure = std::count_if(counts.begin(), counts.end(),
                         [](std::size_t c) { return c > 0; }) <= 1;
    return set.classes.argmax(counts);
  };

  std::vector<std::uint32_t> all(set.rows.size());
  std::iota(all.begin(), all.end(), 0u);
  bool pure = false;
  model.nodes_.push_back({majority(all, pure), {}});
  std::vector<Pending> stack;
  if (!pure) stack.push_back({0, 0, std::move(all)});

  while (!stack.empty()) {
    Pending p = std::move(stack.back());
    stack.pop_back();
    if (p.depth == model.order_.size()) continue;
    const std::size_t feature = model.order_[p.depth];
    std::map<std::uint32_t, std::vector<std::uint32_t>> groups;
    for (std::uint32_t r : p.rows) groups[set.rows[r].values[feature]].push_back(r);
    for (auto &[value, rows] : groups) {
      const auto child = static_cast<std::uint32_t>(model.nodes_.size());
      bool child_pure = false;
      model.nodes_.push_back({majority(rows, child_pure), {}});
      model.nodes_[p.node].children.emplace_back(value, child);
      if (!child_pure) stack.push_back({child, p.depth + 1, std::move(rows)});
    }
  }
  return model;
}

std::uint32_t IgTreeModel::predict(std::span<const std::uint32_t> values) const {
  if (values.size() != order_.size()) {
    throw InvalidArgument("instance arity does not match model");
  }
  std::uint32_t node = 0;
  for (std::size_t depth = 0; depth < order_.size(); ++depth) {
    const auto &children = nodes_[node].children;
    const std::uint32_t value = values[order_[depth]];
    auto it = std::lower_bound(
        children.begin(), children.end(), value,
        [](const auto &child, std::uint32_t v) { return child.first < v; });
    if (it == children.end() || it->first != value) break;
    node = it->second;
  }
  return nodes_[node].default_class;
}

}  // namespace npchunk
