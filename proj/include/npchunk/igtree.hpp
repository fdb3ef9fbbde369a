#ifndef NPCHUNK_IGTREE_HPP_
#define NPCHUNK_IGTREE_HPP_

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "npchunk/instances.hpp"

namespace npchunk {

// Oblivious decision tree: every level tests the same feature, levels ordered
// by descending information gain. Each node stores the majority class of the
// training instances that reach it; a node whose instances all share a class
// is not expanded. Prediction descends as far as the feature values allow and
// returns the default class of the last node reached.
class IgTreeModel {
 public:
  struct Node {
    std::uint32_t default_class = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> children;  // value, node
  };

  static IgTreeModel train(const InstanceSet &set);

  std::uint32_t predict(std::span<const std::uint32_t> values) const;

  const std::vector<std::size_t> &feature_order() const { return order_; }
  const std::vector<Node> &nodes() const { return nodes_; }
  const ClassSet &classes() const { return classes_; }

 private:
  friend struct ModelIO;

  std::vector<std::size_t> order_;
  std::vector<Node> nodes_;  // nodes_[0] is the root
  ClassSet classes_;
};

}  // namespace npchunk

#endif  // NPCHUNK_IGTREE_HPP_
