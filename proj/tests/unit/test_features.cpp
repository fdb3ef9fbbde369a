#include <doctest.h>

#include <sstream>

#include "npchunk/error.hpp"
#include "npchunk/features.hpp"

using namespace npchunk;

namespace {

Sentence example() {
  std::istringstream in(
      "In IN\nearly JJ\ntrading NN\nin IN\nHong NNP\nKong NNP\nMonday NNP\n, ,\n"
      "gold NN\nwas VBD\nquoted VBN\nat IN\n$ $\n366.50 CD\nan DT\nounce NN\n. .\n\n");
  return read_corpus(in).sentences.at(0);
}

ContextSpec pos_window(int width) {
  ContextSpec s;
  s.use_words = false;
  s.pos_left = s.pos_right = width;
  return s;
}

}  // namespace

TEST_CASE("POS window around trading") {
  const auto v = extract_values(example(), 2, pos_window(2));
  CHECK(v == std::vector<std::string>{"IN", "JJ", "NN", "IN", "NNP"});
}

TEST_CASE("window padding at sentence edges") {
  const Sentence s = example();
  const std::string b(kBoundary);
  CHECK(extract_values(s, 0, pos_window(2)) == std::vector<std::string>{b, b, "IN", "JJ", "NN"});
  CHECK(extract_values(s, 16, pos_window(2)) == std::vector<std::string>{"DT", "NN", ".", b, b});
  CHECK_THROWS_AS(extract_values(s, 17, pos_window(2)), InvalidArgument);
}

TEST_CASE("slot order and names") {
  ContextSpec s;
  s.word_left = 1;
  s.word_right = 1;
  s.pos_left = 1;
  s.pos_right = 0;
  s.history = 2;
  s.guide_left = 1;
  s.guide_right = 1;
  s.pos_bigrams = s.history_bigram = s.history_pos = s.bias = true;
  const std::vector<std::string> names{"w-1", "w0",  "w+1",   "p-1",   "p0",
                                       "t-2", "t-1", "g-1",   "g0",    "g+1",
                                       "p-1p0", "p0p+1", "t-2t-1", "t-1p0", "bias"};
  CHECK(s.slot_names() == names);
  CHECK(s.arity() == names.size());

  const Sentence sent = example();
  const std::vector<std::string> history{"O", "I"};
  std::vector<std::string> guide(sent.size(), "O");
  guide[3] = "B";
  const FeatureVector f = extract_features(sent, 2, s, history, guide);
  REQUIRE(f.size() == names.size());
  for (std::size_t i = 0; i < f.size(); ++i) CHECK(f[i].slot == names[i]);
  CHECK(f[0].value == "early");
  CHECK(f[5].value == "O");
  CHECK(f[9].value == "B");
  CHECK(f[10].value == "JJ|NN");
  CHECK(f[12].value == "O|I");
  CHECK(f[13].value == "I|NN");
  CHECK(f[14].value == "1");
}

TEST_CASE("history before the first word is the boundary") {
  ContextSpec s = pos_window(0);
  s.history = 2;
  const auto v = extract_values(example(), 0, s);
  CHECK(v == std::vector<std::string>{"IN", std::string(kBoundary), std::string(kBoundary)});
}

TEST_CASE("missing labels are rejected") {
  ContextSpec s = pos_window(1);
  s.history_pos = true;
  const std::vector<std::string> one{"O"};
  CHECK_THROWS_AS(extract_values(example(), 2, s, one), InvalidArgument);
  CHECK_NOTHROW(extract_values(example(), 1, s, one));

  ContextSpec g = pos_window(1);
  g.guide_left = 1;
  CHECK_THROWS_AS(extract_values(example(), 2, g, {}, one), InvalidArgument);
}
