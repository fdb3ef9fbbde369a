#ifndef NPCHUNK_CHUNK_HPP_
#define NPCHUNK_CHUNK_HPP_

// Chunk structures and their encodings.
//
// A PhraseSet is the canonical form of a sentence's base noun phrases. It can
// be encoded as a per-word tag sequence under one of four schemes or as a pair
// of open/close bracket streams:
//
//   IOB1  B only on the first word of a phrase that directly follows another
//   IOB2  B on the first word of every phrase
//   IOE1  E only on the last word of a phrase that directly precedes another
//   IOE2  E on the last word of every phrase
//
// Decoding is total: classifier output that is not a valid encoding is
// repaired, never rejected.

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace npchunk {

// Inclusive word-index range.
struct Span {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t length() const { return end - start + 1; }
  auto operator<=>(const Span &) const = default;
};

// Sorted set of non-overlapping, non-nesting spans.
class PhraseSet {
 public:
  PhraseSet() = default;

  // Sorts the spans. Throws InvalidArgument on start > end or on any overlap.
  explicit PhraseSet(std::vector<Span> spans);

  // As above, and additionally checks that every span ends before `length`.
  static PhraseSet within(std::vector<Span> spans, std::size_t length);

  const std::vector<Span> &spans() const { return spans_; }
  std::size_t size() const { return spans_.size(); }
  bool empty() const { return spans_.empty(); }
  auto begin() const { return spans_.begin(); }
  auto end() const { return spans_.end(); }

  bool contains(Span span) const;
  bool fits(std::size_t length) const {
    return spans_.empty() || spans_.back().end < length;
  }

  bool operator==(const PhraseSet &) const = default;

 private:
  std::vector<Span> spans_;
};

enum class TagScheme { kIob1, kIob2, kIoe1, kIoe2 };

// The five output representations a learner can be trained on.
enum class Representation { kIob1, kIob2, kIoe1, kIoe2, kOpenClose };

inline constexpr TagScheme kAllSchemes[] = {TagScheme::kIob1, TagScheme::kIob2,
                                            TagScheme::kIoe1, TagScheme::kIoe2};
inline constexpr Representation kAllRepresentations[] = {
    Representation::kIob1, Representation::kIob2, Representation::kIoe1,
    Representation::kIoe2, Representation::kOpenClose};

// O is Outside here. The bracket representation never uses these symbols.
enum class Tag : char {
  kInside = 'I',
  kOutside = 'O',
  kBegin = 'B',
  kEnd = 'E',
};

bool is_iob(TagScheme scheme);
bool in_alphabet(TagScheme scheme, Tag tag);

std::string_view scheme_name(TagScheme scheme);
std::string_view representation_name(Representation repr);
// Case-insensitive; accepts "iob1", "IOE2", "oc", "o+c".
TagScheme parse_scheme(std::string_view name);
Representation parse_representation(std::string_view name);
Representation to_representation(TagScheme scheme);

struct TagSequence {
  TagScheme scheme = TagScheme::kIob1;
  std::vector<Tag> tags;

  std::size_t size() const { return tags.size(); }
  bool operator==(const TagSequence &) const = default;
};

// Parses single-character symbols. Throws InvalidArgument on a symbol outside
// the scheme's alphabet.
TagSequence parse_tags(std::span<const std::string> symbols, TagScheme scheme);
TagSequence parse_tags(std::string_view symbols, TagScheme scheme);
// Space-separated symbols, e.g. "O I I O".
std::string format_tags(const TagSequence &tags);

struct BracketStream {
  std::vector<bool> open;
  std::vector<bool> close;

  BracketStream() = default;
  explicit BracketStream(std::size_t length)
      : open(length, false), close(length, false) {}

  std::size_t size() const { return open.size(); }
  bool operator==(const BracketStream &) const = default;
};

enum class BracketSide { kOpen, kClose };

inline const std::vector<bool> &side_of(const BracketStream &stream,
                                        BracketSide side) {
  return side == BracketSide::kOpen ? stream.open : stream.close;
}
inline std::vector<bool> &side_of(BracketStream &stream, BracketSide side) {
  return side == BracketSide::kOpen ? stream.open : stream.close;
}

// Debug/interchange codes: ".", "[", "]", "[]".
std::string_view bracket_code(bool open, bool close);
// Returns false if `code` is not one of the four codes.
bool parse_bracket_code(std::string_view code, bool &open, bool &close);

TagSequence encode(const PhraseSet &phrases, std::size_t length,
                   TagScheme scheme);
PhraseSet decode(const TagSequence &tags);
BracketStream to_brackets(const PhraseSet &phrases, std::size_t length);
// Shortest-phrase pairing of candidate brackets.
PhraseSet pair_brackets(const BracketStream &stream);
TagSequence convert(const TagSequence &tags, TagScheme target);

// Output of a learner under one representation.
using ChunkOutput = std::variant<TagSequence, BracketStream>;

std::size_t output_length(const ChunkOutput &output);
BracketStream output_brackets(const ChunkOutput &output);
PhraseSet output_phrases(const ChunkOutput &output);

}  // namespace npchunk

#endif  // NPCHUNK_CHUNK_HPP_
