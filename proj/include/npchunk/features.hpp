#ifndef NPCHUNK_FEATURES_HPP_
#define NPCHUNK_FEATURES_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "npchunk/corpus.hpp"

namespace npchunk {

// Reserved values. Tokens never contain spaces, so these cannot collide with
// real words or tags.
inline constexpr std::string_view kBoundary = " BOUNDARY";
inline constexpr std::string_view kUnknown = " UNKNOWN";

// Which context a classifier sees around the focus word. Slots are emitted in
// a fixed order:
//   w-L..w+R, p-L..p+R, t-H..t-1, g-L..g+R, p-1p0, p0p+1, t-2t-1, t-1p0, bias
struct ContextSpec {
  bool use_words = true;  // emit w-L..w+R
  bool use_pos = true;    // emit p-L..p+R
  int word_left = 0;
  int word_right = 0;
  int pos_left = 0;
  int pos_right = 0;
  int history = 0;       // labels already predicted for preceding words
  int guide_left = 0;    // labels from an earlier processing stage
  int guide_right = 0;
  bool pos_bigrams = false;
  bool history_bigram = false;  // needs history >= 2
  bool history_pos = false;     // needs history >= 1
  bool bias = false;

  std::vector<std::string> slot_names() const;
  std::size_t arity() const { return slot_names().size(); }
  bool uses_guide() const { return guide_left > 0 || guide_right > 0; }

  bool operator==(const ContextSpec &) const = default;
};

struct Feature {
  std::string slot;
  std::string value;

  bool operator==(const Feature &) const = default;
};
using FeatureVector = std::vector<Feature>;

// Values in slot order. `history` must cover every position before `index`
// when spec.history > 0; `guide` must cover the whole sentence when the spec
// uses guide labels. Throws InvalidArgument otherwise.
std::vector<std::string> extract_values(const Sentence &sentence,
                                        std::size_t index,
                                        const ContextSpec &spec,
                                        std::span<const std::string> history = {},
                                        std::span<const std::string> guide = {});

FeatureVector extract_features(const Sentence &sentence, std::size_t index,
                               const ContextSpec &spec,
                               std::span<const std::string> history = {},
                               std::span<const std::string> guide = {});

}  // namespace npchunk

#endif  // NPCHUNK_FEATURES_HPP_
