#include "npchunk/chunk.hpp"

#include <algorithm>
#include <cctype>

#include "npchunk/error.hpp"

namespace npchunk {

namespace {

std::string lowercase(std::string_view s) {
  std::string out(s);
  for (char &c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool parse_tag(char c, Tag &tag) {
  switch (c) {
    case 'I': tag = Tag::kInside; return true;
    case 'O': tag = Tag::kOutside; return true;
    case 'B': tag = Tag::kBegin; return true;
    case 'E': tag = Tag::kEnd; return true;
    default: return false;
  }
}

}  // namespace

PhraseSet::PhraseSet(std::vector<Span> spans) : spans_(std::move(spans)) {
  std::sort(spans_.begin(), spans_.end());
  for (std::size_t i = 0; i < spans_.size(); ++i) {
    if (spans_[i].start > spans_[i].end) {
      throw InvalidArgument("span start after end");
    }
    if (i > 0 && spans_[i].start <= spans_[i - 1].end) {
      throw InvalidArgument("spans overlap");
    }
  }
}

PhraseSet PhraseSet::within(std::vector<Span> spans, std::size_t length) {
  PhraseSet set(std::move(spans));
  if (!set.fits(length)) throw InvalidArgument("span outside sentence");
  return set;
}

bool PhraseSet::contains(Span span) const {
  return std::binary_search(spans_.begin(), spans_.end(), span);
}

bool is_iob(TagScheme scheme) {
  return scheme == TagScheme::kIob1 || scheme == TagScheme::kIob2;
}

bool in_alphabet(TagScheme scheme, Tag tag) {
  switch (tag) {
    case Tag::kInside:
    case Tag::kOutside:
      return true;
    case Tag::kBegin:
      return is_iob(scheme);
    case Tag::kEnd:
      return !is_iob(scheme);
  }
  return false;
}

std::string_view scheme_name(TagScheme scheme) {
  return representation_name(to_representation(scheme));
}

std::string_view representation_name(Representation repr) {
  switch (repr) {
    case Representation::kIob1: return "IOB1";
    case Representation::kIob2: return "IOB2";
    case Representation::kIoe1: return "IOE1";
    case Representation::kIoe2: return "IOE2";
    case Representation::kOpenClose: return "O+C";
  }
  return "?";
}

Representation parse_representation(std::string_view name) {
  const std::string s = lowercase(name);
  if (s == "iob1") return Representation::kIob1;
  if (s == "iob2") return Representation::kIob2;
  if (s == "ioe1") return Representation::kIoe1;
  if (s == "ioe2") return Representation::kIoe2;
  if (s == "oc" || s == "o+c" || s == "brackets") {
    return Representation::kOpenClose;
  }
  throw InvalidArgument("unknown representation '" + std::string(name) + "'");
}

TagScheme parse_scheme(std::string_view name) {
  switch (parse_representation(name)) {
    case Representation::kIob1: return TagScheme::kIob1;
    case Representation::kIob2: return TagScheme::kIob2;
    case Representation::kIoe1: return TagScheme::kIoe1;
    case Representation::kIoe2: return TagScheme::kIoe2;
    case Representation::kOpenClose: break;
  }
  throw InvalidArgument("'" + std::string(name) + "' is not a tagging scheme");
}

Representation to_representation(TagScheme scheme) {
  switch (scheme) {
    case TagScheme::kIob1: return Representation::kIob1;
    case TagScheme::kIob2: return Representation::kIob2;
    case TagScheme::kIoe1: return Representation::kIoe1;
    case TagScheme::kIoe2: return Representation::kIoe2;
  }
  return Representation::kIob1;
}

TagSequence parse_tags(std::span<const std::string> symbols, TagScheme scheme) {
  TagSequence out{scheme, {}};
  out.tags.reserve(symbols.size());
  for (const std::string &symbol : symbols) {
    Tag tag;
    if (symbol.size() != 1 || !parse_tag(symbol[0], tag) ||
        !in_alphabet(scheme, tag)) {
      throw InvalidArgument("tag '" + symbol + "' is not valid for " +
                            std::string(scheme_name(scheme)));
    }
    out.tags.push_back(tag);
  }
  return out;
}

TagSequence parse_tags(std::string_view symbols, TagScheme scheme) {
  std::vector<std::string> parts;
  std::size_t i = 0;
  while (i < symbols.size()) {
    if (symbols[i] == ' ') {
      ++i;
      continue;
    }
    std::size_t j = symbols.find(' ', i);
    if (j == std::string_view::npos) j = symbols.size();
    parts.emplace_back(symbols.substr(i, j - i));
    i = j;
  }
  return parse_tags(std::span<const std::string>(parts), scheme);
}

std::string format_tags(const TagSequence &tags) {
  std::string out;
  for (std::size_t i = 0; i < tags.tags.size(); ++i) {
    if (i > 0) out += ' ';
    out += static_cast<char>(tags.tags[i]);
  }
  return out;
}

std::string_view bracket_code(bool open, bool close) {
  if (open && close) return "[]";
  if (open) return "[";
  if (close) return "]";
  return ".";
}

bool parse_bracket_code(std::string_view code, bool &open, bool &close) {
  if (code == ".") {
    open = close = false;
  } else if (code == "[") {
    open = true;
    close = false;
  } else if (code == "]") {
    open = false;
    close = true;
  } else if (code == "[]") {
    open = close = true;
  } else {
    return false;
  }
  return true;
}

TagSequence encode(const PhraseSet &phrases, std::size_t length,
                   TagScheme scheme) {
  if (!phrases.fits(length)) throw InvalidArgument("span outside sentence");
  TagSequence out{scheme, std::vector<Tag>(length, Tag::kOutside)};
  const auto &spans = phrases.spans();
  for (std::size_t k = 0; k < spans.size(); ++k) {
    const Span span = spans[k];
    for (std::size_t i = span.start; i <= span.end; ++i) {
      out.tags[i] = Tag::kInside;
    }
    const bool follows = k > 0 && spans[k - 1].end + 1 == span.start;
    const bool precedes =
        k + 1 < spans.size() && span.end + 1 == spans[k + 1].start;
    switch (scheme) {
      case TagScheme::kIob1:
        if (follows) out.tags[span.start] = Tag::kBegin;
        break;
      case TagScheme::kIob2:
        out.tags[span.start] = Tag::kBegin;
        break;
      case TagScheme::kIoe1:
        if (precedes) out.tags[span.end] = Tag::kEnd;
        break;
      case TagScheme::kIoe2:
        out.tags[span.end] = Tag::kEnd;
        break;
    }
  }
  return out;
}

// IOB1 and IOB2 share one forgiving decoder: a phrase starts at B or at an I
// that follows O or the sentence start, and extends over the following I's.
// IOE1 and IOE2 use the mirror image. The scheme-specific difference only
// matters for valid encodings, which both decoders reproduce exactly.
PhraseSet decode(const TagSequence &tags) {
  const auto &t = tags.tags;
  const std::size_t n = t.size();
  std::vector<Span> spans;
  if (is_iob(tags.scheme)) {
    std::size_t i = 0;
    while (i < n) {
      if (t[i] == Tag::kOutside || t[i] == Tag::kEnd) {
        ++i;
        continue;
      }
      const std::size_t start = i++;
      while (i < n && t[i] == Tag::kInside) ++i;
      spans.push_back({start, i - 1});
    }
  } else {
    std::size_t i = 0;
    while (i < n) {
      if (t[i] == Tag::kOutside || t[i] == Tag::kBegin) {
        ++i;
        continue;
      }
      const std::size_t start = i;
      while (i < n && t[i] == Tag::kInside) ++i;
      if (i < n && t[i] == Tag::kEnd) {
        spans.push_back({start, i});
        ++i;
      } else {
        spans.push_back({start, i - 1});
      }
    }
  }
  return PhraseSet(std::move(spans));
}

BracketStream to_brackets(const PhraseSet &phrases, std::size_t length) {
  if (!phrases.fits(length)) throw InvalidArgument("span outside sentence");
  BracketStream out(length);
  for (const Span &span : phrases) {
    out.open[span.start] = true;
    out.close[span.end] = true;
  }
  return out;
}

// Each close candidate is paired with the nearest open candidate at or before
// it that lies after the previously built phrase. Opens superseded by a later
// open and closes without a pending open are dropped.
PhraseSet pair_brackets(const BracketStream &stream) {
  if (stream.open.size() != stream.close.size()) {
    throw InvalidArgument("open and close streams differ in length");
  }
  std::vector<Span> spans;
  bool pending = false;
  std::size_t pending_open = 0;
  for (std::size_t i = 0; i < stream.size(); ++i) {
    if (stream.open[i]) {
      pending = true;
      pending_open = i;
    }
    if (stream.close[i] && pending) {
      spans.push_back({pending_open, i});
      pending = false;
    }
  }
  return PhraseSet(std::move(spans));
}

TagSequence convert(const TagSequence &tags, TagScheme target) {
  return encode(decode(tags), tags.size(), target);
}

std::size_t output_length(const ChunkOutput &output) {
  return std::visit([](const auto &o) { return o.size(); }, output);
}

BracketStream output_brackets(const ChunkOutput &output) {
  if (const auto *tags = std::get_if<TagSequence>(&output)) {
    return to_brackets(decode(*tags), tags->size());
  }
  return std::get<BracketStream>(output);
}

PhraseSet output_phrases(const ChunkOutput &output) {
  if (const auto *tags = std::get_if<TagSequence>(&output)) {
    return decode(*tags);
  }
  return pair_brackets(std::get<BracketStream>(output));
}

}  // namespace npchunk
