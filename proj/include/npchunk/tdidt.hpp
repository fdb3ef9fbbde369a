#ifndef NPCHUNK_TDIDT_HPP_
#define NPCHUNK_TDIDT_HPP_

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "npchunk/instances.hpp"

namespace npchunk {

// Top-down induction of a multiway decision tree. At every node the unused
// feature with the highest information gain on the node's instances becomes
// the test (ties: lower feature index). Expansion stops when the node is pure,
// no feature is left, or the best gain is zero. There is no value grouping and
// no pruning.
class TdidtModel {
 public:
  struct Node {
    int feature = -1;  // -1 for a leaf
    std::uint32_t majority = 0;
    std::vector<std::size_t> class_counts;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> children;  // value, node
  };

  static TdidtModel train(const InstanceSet &set);

  // Values not seen below a node resolve to that node's majority class.
  std::uint32_t predict(std::span<const std::uint32_t> values) const;

  const std::vector<Node> &nodes() const { return nodes_; }
  const ClassSet &classes() const { return classes_; }
  std::size_t depth() const;

 private:
  friend struct ModelIO;

  std::vector<Node> nodes_;
  ClassSet classes_;
  std::size_t arity_ = 0;
};

}  // namespace npchunk

#endif  // NPCHUNK_TDIDT_HPP_
