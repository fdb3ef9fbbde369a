#include <doctest.h>

#include <sstream>

#include "npchunk/corpus.hpp"
#include "npchunk/error.hpp"

using namespace npchunk;

namespace {

Corpus parse(const std::string &text, ReadOptions options = {}) {
  std::istringstream in(text);
  return read_corpus(in, options);
}

std::string write(const Corpus &c, Representation r) {
  std::ostringstream out;
  write_corpus(c, r, out);
  return out.str();
}

const char *kExample =
    "In IN O\nearly JJ I\ntrading NN I\nin IN O\nHong NNP I\nKong NNP I\n"
    "Monday NNP B\n, , O\ngold NN I\nwas VBD O\nquoted VBN O\nat IN O\n$ $ I\n"
    "366.50 CD I\nan DT B\nounce NN I\n. . O\n\n";

}  // namespace

TEST_CASE("reads a three-column sentence") {
  const Corpus c = parse("In IN O\nearly JJ I\ntrading NN I\n\n");
  REQUIRE(c.size() == 1);
  CHECK(c.sentences[0].size() == 3);
  CHECK(c.sentences[0].tokens[1] == Token{"early", "JJ"});
  REQUIRE(c.sentences[0].gold);
  CHECK(*c.sentences[0].gold == PhraseSet({{1, 2}}));
}

TEST_CASE("empty stream and two-column input") {
  CHECK(parse("").empty());
  CHECK(parse("\n\n\n").empty());
  const Corpus c = parse("gold NN\n\n");
  REQUIRE(c.size() == 1);
  CHECK_FALSE(c.sentences[0].gold);
  CHECK_FALSE(c.has_gold());
  CHECK_THROWS_AS(c.gold(), InvalidArgument);
}

TEST_CASE("missing final blank line, tabs, CRLF and extra blank lines") {
  const Corpus c = parse("a\tDT\tI\r\nb  NN I\r\n\r\n\n\nc NN O");
  REQUIRE(c.size() == 2);
  CHECK(c.sentences[0].tokens[0] == Token{"a", "DT"});
  CHECK(*c.sentences[0].gold == PhraseSet({{0, 1}}));
  CHECK(c.sentences[1].gold->empty());
}

TEST_CASE("malformed input names the line") {
  try {
    parse("a DT I\nb NN I X\n\n");
    FAIL("expected FormatError");
  } catch (const FormatError &e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse("lonely\n\n"), FormatError);
  // Label column for some but not all tokens.
  CHECK_THROWS_AS(parse("a DT I\nb NN\n\n"), FormatError);
  // Undecodable symbols.
  CHECK_THROWS_AS(parse("a DT X\n\n"), FormatError);
  CHECK_THROWS_AS(parse("a DT B\nb NN E\n\n"), FormatError);
  CHECK_THROWS_AS(parse("a DT B\n\n", {Representation::kIoe1}), FormatError);
}

TEST_CASE("scheme detection and override") {
  // E selects the end family.
  const Corpus e = parse("a DT I\nb NN E\nc NN I\n\n");
  CHECK(*e.sentences[0].gold == PhraseSet({{0, 1}, {2, 2}}));
  // Bracket codes select O+C.
  const Corpus oc = parse("a DT [\nb NN ]\nc NN []\n\n");
  CHECK(*oc.sentences[0].gold == PhraseSet({{0, 1}, {2, 2}}));
  // An IOE2 file read under its own name.
  const Corpus forced = parse("a DT I\nb NN E\n\n", {Representation::kIoe2});
  CHECK(*forced.sentences[0].gold == PhraseSet({{0, 1}}));
}

TEST_CASE("write and read back in every representation") {
  const Corpus c = parse(kExample);
  for (Representation r : kAllRepresentations) {
    CHECK(parse(write(c, r), {r}) == c);
    CHECK(parse(write(c, r)) == c);
  }
  CHECK(write(c, Representation::kIob1) == kExample);
}

TEST_CASE("IOB1 example converts to IOB2") {
  const std::string iob2 = write(parse(kExample), Representation::kIob2);
  CHECK(iob2 ==
        "In IN O\nearly JJ B\ntrading NN I\nin IN O\nHong NNP B\nKong NNP I\n"
        "Monday NNP B\n, , O\ngold NN B\nwas VBD O\nquoted VBN O\nat IN O\n$ $ B\n"
        "366.50 CD I\nan DT B\nounce NN I\n. . O\n\n");
}

TEST_CASE("writing needs annotation") {
  CHECK_THROWS_AS(write(parse("a DT\n\n"), Representation::kIob1), InvalidArgument);
}

TEST_CASE("system output keeps raw bracket codes") {
  std::istringstream in("a DT [\nb NN [\nc NN .\n\n");
  const SystemOutput out = read_system_output(in);
  REQUIRE(out.streams.size() == 1);
  CHECK(out.streams[0].open == std::vector<bool>{true, true, false});
  CHECK(out.streams[0].close == std::vector<bool>{false, false, false});
  std::istringstream tags("a DT I\nb NN B\n\n");
  CHECK(read_system_output(tags).streams[0] == to_brackets(PhraseSet({{0, 0}, {1, 1}}), 2));
  std::istringstream bare("a DT\n\n");
  CHECK_THROWS_AS(read_system_output(bare), FormatError);
}

TEST_CASE("write_outputs mixes schemes and brackets") {
  const Corpus c = parse("a DT I\nb NN I\n\nc NN O\n\n");
  std::ostringstream out;
  write_outputs(c,
                {encode(PhraseSet({{0, 1}}), 2, TagScheme::kIoe2),
                 to_brackets(PhraseSet({{0, 0}}), 1)},
                out);
  CHECK(out.str() == "a DT I\nb NN E\n\nc NN []\n\n");
  CHECK_THROWS_AS(write_outputs(c, {}, out), InvalidArgument);
}

TEST_CASE("alignment check") {
  const Corpus a = parse("a DT I\nb NN I\n\n");
  CHECK_NOTHROW(check_aligned(a, parse("a XX\nb YY\n\n")));
  CHECK_THROWS_AS(check_aligned(a, parse("a DT\nc NN\n\n")), InvalidArgument);
  CHECK_THROWS_AS(check_aligned(a, parse("a DT\n\n")), InvalidArgument);
  CHECK_THROWS_AS(check_aligned(a, Corpus{}), InvalidArgument);
}

namespace {

Corpus numbered(std::size_t n) {
  Corpus c;
  for (std::size_t i = 0; i < n; ++i) {
    c.sentences.push_back({{{"w" + std::to_string(i), "NN"}}, PhraseSet({{0, 0}})});
  }
  return c;
}

std::vector<std::string> words(const Corpus &c) {
  std::vector<std::string> out;
  for (const auto &s : c.sentences) out.push_back(s.tokens[0].word);
  return out;
}

}  // namespace

TEST_CASE("prefix split") {
  const auto [train, tune] = split(numbered(10), {0.9, SplitMode::kPrefix});
  CHECK(train.size() == 9);
  CHECK(words(tune) == std::vector<std::string>{"w9"});
  // ceil(0.9 * 25) = 23
  CHECK(split(numbered(25), {0.9, SplitMode::kPrefix}).first.size() == 23);
  CHECK(split(numbered(7), {1.0, SplitMode::kPrefix}).second.empty());
}

TEST_CASE("interleaved split") {
  const auto [train, tune] = split(numbered(25), {0.9, SplitMode::kInterleaved});
  CHECK(words(tune) == std::vector<std::string>{"w9", "w19"});
  CHECK(train.size() == 23);
  const auto halves = split(numbered(4), {0.5, SplitMode::kInterleaved});
  CHECK(words(halves.second) == std::vector<std::string>{"w1", "w3"});
}

TEST_CASE("split errors") {
  CHECK_THROWS_AS(split(Corpus{}, {}), InvalidArgument);
  CHECK_THROWS_AS(split(numbered(3), {0.0, SplitMode::kPrefix}), InvalidArgument);
  CHECK_THROWS_AS(split(numbered(3), {1.5, SplitMode::kPrefix}), InvalidArgument);
  CHECK_THROWS_AS(split(numbered(3), {0.9, SplitMode::kPrefix, true}), InvalidArgument);
  CHECK(parse_split_mode("interleaved") == SplitMode::kInterleaved);
  CHECK_THROWS_AS(parse_split_mode("random"), InvalidArgument);
}

TEST_CASE("sentence validation") {
  CHECK_THROWS_AS(validate(Sentence{}), InvalidArgument);
  CHECK_THROWS_AS(validate(Sentence{{{"a b", "DT"}}, std::nullopt}), InvalidArgument);
  CHECK_THROWS_AS(validate(Sentence{{{"a", ""}}, std::nullopt}), InvalidArgument);
  CHECK_THROWS_AS(validate(Sentence{{{"a", "DT"}}, PhraseSet({{0, 1}})}), InvalidArgument);
  CHECK_NOTHROW(validate(Sentence{{{"a", "DT"}}, PhraseSet({{0, 0}})}));
}
