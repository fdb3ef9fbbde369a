#ifndef NPCHUNK_INSTANCES_HPP_
#define NPCHUNK_INSTANCES_HPP_

// Dense integer coding of symbolic instances, shared by all learners.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace npchunk {

// Class labels with their training frequencies. Fixes the global tie-break
// order: higher training frequency first, then the lexicographically smaller
// name.
class ClassSet {
 public:
  std::uint32_t add(std::string_view label, std::size_t count = 1);
  // Returns size() when the label is unknown.
  std::uint32_t find(std::string_view label) const;

  std::size_t size() const { return names_.size(); }
  const std::string &name(std::uint32_t id) const { return names_[id]; }
  std::size_t frequency(std::uint32_t id) const { return freq_[id]; }
  std::size_t total() const;

  // True if `a` wins a tie against `b`.
  bool prefers(std::uint32_t a, std::uint32_t b) const;

  // Index of the highest score; ties are resolved by prefers().
  template <typename T>
  std::uint32_t argmax(std::span<const T> scores) const {
    std::uint32_t best = 0;
    for (std::uint32_t c = 1; c < scores.size(); ++c) {
      if (scores[c] > scores[best] ||
          (scores[c] == scores[best] && prefers(c, best))) {
        best = c;
      }
    }
    return best;
  }
  template <typename T>
  std::uint32_t argmax(const std::vector<T> &scores) const {
    return argmax(std::span<const T>(scores));
  }

  const std::vector<std::string> &names() const { return names_; }
  const std::vector<std::size_t> &frequencies() const { return freq_; }

 private:
  std::vector<std::string> names_;
  std::vector<std::size_t> freq_;
  std::unordered_map<std::string, std::uint32_t> ids_;
};

// Per-slot value dictionaries. Id 0 stands for a value never seen in
// training.
class ValueCodec {
 public:
  static constexpr std::uint32_t kUnseen = 0;

  ValueCodec() = default;
  explicit ValueCodec(std::size_t slots);

  std::uint32_t add(std::size_t slot, const std::string &value);
  std::uint32_t find(std::size_t slot, const std::string &value) const;
  // Number of ids in the slot, including kUnseen.
  std::size_t value_count(std::size_t slot) const {
    return values_[slot].size() + 1;
  }
  const std::string &value(std::size_t slot, std::uint32_t id) const;
  std::size_t slots() const { return values_.size(); }

  const std::vector<std::vector<std::string>> &values() const { return values_; }
  static ValueCodec from_values(std::vector<std::vector<std::string>> values);

 private:
  std::vector<std::vector<std::string>> values_;
  std::vector<std::unordered_map<std::string, std::uint32_t>> ids_;
};

struct Instance {
  std::vector<std::uint32_t> values;
  std::uint32_t label = 0;
};

struct InstanceSet {
  std::vector<std::string> slots;
  ValueCodec codec;
  ClassSet classes;
  std::vector<Instance> rows;

  // Throws InvalidArgument when rows and labels differ in count, a row has
  // the wrong arity, or there are no rows.
  static InstanceSet build(std::vector<std::string> slots,
                           const std::vector<std::vector<std::string>> &rows,
                           const std::vector<std::string> &labels);

  std::vector<std::uint32_t> encode(const std::vector<std::string> &values) const;
  std::size_t size() const { return rows.size(); }
};

// Shannon entropy in bits of a count distribution.
double entropy(std::span<const std::size_t> counts);

enum class Weighting { kInfoGain, kGainRatio, kNone };

// Gain (or gain ratio) of one slot over a subset of rows.
double feature_weight(const InstanceSet &set, std::span<const std::uint32_t> rows,
                      std::size_t slot, Weighting weighting);

// Weights of every slot over all rows. kNone gives 1 for every slot.
std::vector<double> feature_weights(const InstanceSet &set, Weighting weighting);

Weighting parse_weighting(std::string_view name);
std::string_view weighting_name(Weighting weighting);

}  // namespace npchunk

#endif  // NPCHUNK_INSTANCES_HPP_
