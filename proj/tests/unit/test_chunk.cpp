#include <doctest.h>

#include <random>

#include "npchunk/chunk.hpp"
#include "npchunk/error.hpp"
#include "oracles.hpp"
#include "properties.hpp"

using namespace npchunk;

namespace {

// In early trading in Hong Kong Monday , gold was quoted at $ 366.50 an ounce .
const PhraseSet kExample({{1, 2}, {4, 5}, {6, 6}, {8, 8}, {12, 13}, {14, 15}});
constexpr std::size_t kExampleLength = 17;

}  // namespace

TEST_CASE("example sentence in the four tagging schemes") {
  CHECK(format_tags(encode(kExample, kExampleLength, TagScheme::kIob1)) ==
        "O I I O I I B O I O O O I I B I O");
  CHECK(format_tags(encode(kExample, kExampleLength, TagScheme::kIob2)) ==
        "O B I O B I B O B O O O B I B I O");
  CHECK(format_tags(encode(kExample, kExampleLength, TagScheme::kIoe1)) ==
        "O I I O I E I O I O O O I E I I O");
  CHECK(format_tags(encode(kExample, kExampleLength, TagScheme::kIoe2)) ==
        "O I E O I E E O E O O O I E I E O");
  for (TagScheme s : kAllSchemes) {
    CHECK(decode(encode(kExample, kExampleLength, s)) == kExample);
  }
}

TEST_CASE("example sentence as brackets") {
  const BracketStream b = to_brackets(kExample, kExampleLength);
  std::string codes;
  for (std::size_t i = 0; i < b.size(); ++i) {
    codes += bracket_code(b.open[i], b.close[i]);
    codes += ' ';
  }
  CHECK(codes == ". [ ] . [ ] [] . [] . . . [ ] [ ] . ");
  CHECK(pair_brackets(b) == kExample);
}

TEST_CASE("empty inputs") {
  CHECK(encode(PhraseSet{}, 0, TagScheme::kIob1).tags.empty());
  CHECK(decode(TagSequence{TagScheme::kIoe2, {}}).empty());
  CHECK(pair_brackets(BracketStream(0)).empty());
  CHECK(format_tags(encode(PhraseSet{}, 3, TagScheme::kIob2)) == "O O O");
}

TEST_CASE("phrase sets reject overlap and inverted spans") {
  CHECK_THROWS_AS(PhraseSet({{0, 2}, {2, 3}}), InvalidArgument);
  CHECK_THROWS_AS(PhraseSet({{0, 3}, {1, 2}}), InvalidArgument);
  CHECK_THROWS_AS(PhraseSet({{3, 2}}), InvalidArgument);
  CHECK_THROWS_AS(PhraseSet::within({{0, 4}}, 4), InvalidArgument);
  const PhraseSet p({{4, 5}, {0, 1}});
  CHECK(p.spans().front() == Span{0, 1});
  CHECK(p.contains({4, 5}));
  CHECK_FALSE(p.contains({4, 4}));
}

TEST_CASE("encode rejects phrases past the sentence end") {
  CHECK_THROWS_AS(encode(PhraseSet({{2, 4}}), 4, TagScheme::kIob1), InvalidArgument);
  CHECK_THROWS_AS(to_brackets(PhraseSet({{2, 4}}), 4), InvalidArgument);
}

TEST_CASE("tag parsing enforces the scheme alphabet") {
  CHECK(parse_tags("O I B", TagScheme::kIob1).tags.size() == 3);
  CHECK_THROWS_AS(parse_tags("O I E", TagScheme::kIob1), InvalidArgument);
  CHECK_THROWS_AS(parse_tags("O B", TagScheme::kIoe2), InvalidArgument);
  CHECK_THROWS_AS(parse_tags("O X", TagScheme::kIob2), InvalidArgument);
  CHECK_THROWS_AS(parse_tags("O II", TagScheme::kIob2), InvalidArgument);
}

TEST_CASE("forgiving decoding") {
  // B after O and a leading E are still read as phrase boundaries.
  CHECK(decode(parse_tags("B I O B", TagScheme::kIob1)) == PhraseSet({{0, 1}, {3, 3}}));
  CHECK(decode(parse_tags("I B B I", TagScheme::kIob1)) ==
        PhraseSet({{0, 0}, {1, 1}, {2, 3}}));
  CHECK(decode(parse_tags("E O I E E", TagScheme::kIoe2)) ==
        PhraseSet({{0, 0}, {2, 3}, {4, 4}}));
  CHECK(decode(parse_tags("I I", TagScheme::kIoe1)) == PhraseSet({{0, 1}}));
}

TEST_CASE("shortest-phrase pairing") {
  auto stream = [](std::vector<std::string> codes) { return props::from_codes(codes); };
  // Two opens, one close: the inner open wins.
  CHECK(pair_brackets(stream({"[", "[", "]"})) == PhraseSet({{1, 2}}));
  // Two closes, one open: the first close wins, the second is dropped.
  CHECK(pair_brackets(stream({"[", "]", "]"})) == PhraseSet({{0, 1}}));
  // Unmatched brackets vanish.
  CHECK(pair_brackets(stream({"]", ".", "["})).empty());
  // A one-word phrase inside a pending open: no nesting.
  CHECK(pair_brackets(stream({"[", "[]", "]"})) == PhraseSet({{1, 1}}));
}

TEST_CASE("bracket codes") {
  bool o = false, c = false;
  for (const char *code : {".", "[", "]", "[]"}) {
    REQUIRE(parse_bracket_code(code, o, c));
    CHECK(bracket_code(o, c) == code);
  }
  CHECK_FALSE(parse_bracket_code("][", o, c));
  CHECK_FALSE(parse_bracket_code("I", o, c));
}

TEST_CASE("representation names") {
  CHECK(parse_representation("o+c") == Representation::kOpenClose);
  CHECK(parse_representation("OC") == Representation::kOpenClose);
  CHECK(parse_representation("ioe2") == Representation::kIoe2);
  CHECK(representation_name(Representation::kOpenClose) == "O+C");
  CHECK_THROWS_AS(parse_scheme("O+C"), InvalidArgument);
  CHECK_THROWS_AS(parse_representation("IOB3"), InvalidArgument);
  for (TagScheme s : kAllSchemes) CHECK(parse_scheme(scheme_name(s)) == s);
}

TEST_CASE("phrase-set enumeration matches its closed-form count") {
  for (std::size_t n = 0; n <= 8; ++n) {
    CHECK(oracle::all_phrase_sets(n).size() == oracle::phrase_set_count(n));
  }
  CHECK(oracle::phrase_set_count(8) == 1597);
}

TEST_CASE("exhaustive round trip up to six words") {
  const auto r = props::round_trip(6);
  CHECK(r.checked == 5 * (2 + 5 + 13 + 34 + 89 + 233));
  CHECK_MESSAGE(r.failures == 0, r.first);
}

TEST_CASE("conversion preserves phrases") {
  const auto r = props::conversions(1000, 7);
  CHECK_MESSAGE(r.failures == 0, r.first);
}

TEST_CASE("pairing is maximal and shortest on every stream up to five words") {
  const auto r = props::pairing(5);
  CHECK(r.checked == 4 + 16 + 64 + 256 + 1024);
  CHECK_MESSAGE(r.failures == 0, r.first);
}

TEST_CASE("convert keeps the scheme alphabet and is idempotent") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const TagSequence t = props::random_tags(rng, 1 + rng() % 10, kAllSchemes[rng() % 4]);
    for (TagScheme s : kAllSchemes) {
      const TagSequence c = convert(t, s);
      CHECK(c.scheme == s);
      for (Tag tag : c.tags) CHECK(in_alphabet(s, tag));
      CHECK(convert(c, s) == c);
    }
  }
}

TEST_CASE("output helpers") {
  const ChunkOutput tags = encode(kExample, kExampleLength, TagScheme::kIoe1);
  const ChunkOutput brackets = to_brackets(kExample, kExampleLength);
  CHECK(output_length(tags) == kExampleLength);
  CHECK(output_phrases(tags) == kExample);
  CHECK(output_phrases(brackets) == kExample);
  CHECK(output_brackets(tags) == std::get<BracketStream>(brackets));
}
