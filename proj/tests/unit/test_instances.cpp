#include <doctest.h>

#include <cmath>

#include "npchunk/error.hpp"
#include "npchunk/instances.hpp"
#include "oracles.hpp"

using namespace npchunk;

namespace {

using Rows = std::vector<std::vector<std::string>>;

std::vector<std::size_t> counts(std::initializer_list<std::size_t> c) { return c; }

}  // namespace

TEST_CASE("entropy") {
  CHECK(entropy(counts({4, 4})) == doctest::Approx(1.0));
  CHECK(entropy(counts({1, 1, 1, 1})) == doctest::Approx(2.0));
  CHECK(entropy(counts({7})) == 0.0);
  CHECK(entropy(counts({0, 5, 0})) == 0.0);
  CHECK(entropy(counts({})) == 0.0);
}

TEST_CASE("class tie-break order") {
  ClassSet c;
  c.add("O", 5);
  c.add("B", 2);
  c.add("I", 5);
  CHECK(c.prefers(c.find("I"), c.find("O")));  // same frequency, smaller name
  CHECK(c.prefers(c.find("O"), c.find("B")));  // higher frequency
  const std::vector<int> scores{3, 3, 3};
  CHECK(c.name(c.argmax(scores)) == "I");
  CHECK(c.find("E") == c.size());
  CHECK(c.total() == 12);
}

TEST_CASE("codec reserves the unseen id") {
  ValueCodec v(2);
  CHECK(v.add(0, "a") == 1);
  CHECK(v.add(0, "b") == 2);
  CHECK(v.add(0, "a") == 1);
  CHECK(v.find(0, "zzz") == ValueCodec::kUnseen);
  CHECK(v.find(1, "a") == ValueCodec::kUnseen);
  CHECK(v.value_count(0) == 3);
  CHECK(v.value(0, 2) == "b");
}

TEST_CASE("instance set validation") {
  CHECK_THROWS_AS(InstanceSet::build({"f"}, {}, {}), InvalidArgument);
  CHECK_THROWS_AS(InstanceSet::build({"f"}, {{"a"}}, {"x", "y"}), InvalidArgument);
  CHECK_THROWS_AS(InstanceSet::build({"f"}, {{"a", "b"}}, {"x"}), InvalidArgument);
  const InstanceSet s = InstanceSet::build({"f"}, {{"a"}, {"b"}}, {"x", "y"});
  CHECK(s.encode({"c"})[0] == ValueCodec::kUnseen);
}

TEST_CASE("gain of an identifying feature equals class entropy") {
  const Rows rows{{"a"}, {"b"}, {"c"}, {"d"}, {"e"}, {"f"}};
  const std::vector<std::string> labels{"x", "x", "y", "y", "y", "z"};
  const InstanceSet s = InstanceSet::build({"id"}, rows, labels);
  const double h = entropy(counts({2, 3, 1}));
  CHECK(feature_weights(s, Weighting::kInfoGain)[0] == doctest::Approx(h).epsilon(1e-12));
  // Gain ratio divides by the split entropy, log2(6) here.
  CHECK(feature_weights(s, Weighting::kGainRatio)[0] ==
        doctest::Approx(h / std::log2(6.0)).epsilon(1e-12));
}

TEST_CASE("constant feature has zero weight") {
  const Rows rows{{"k", "a"}, {"k", "b"}, {"k", "a"}, {"k", "b"}};
  const std::vector<std::string> labels{"x", "y", "x", "y"};
  const InstanceSet s = InstanceSet::build({"c", "v"}, rows, labels);
  for (Weighting w : {Weighting::kInfoGain, Weighting::kGainRatio}) {
    const auto ws = feature_weights(s, w);
    CHECK(ws[0] == 0.0);
    CHECK(ws[1] == doctest::Approx(1.0));
  }
  CHECK(feature_weights(s, Weighting::kNone) == std::vector<double>{1.0, 1.0});
}

TEST_CASE("information gain matches the oracle") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    Rows rows;
    std::vector<std::string> labels;
    const std::size_t n = 5 + rng() % 40;
    for (std::size_t r = 0; r < n; ++r) {
      rows.push_back({std::string(1, char('a' + rng() % 3)), std::string(1, char('a' + rng() % 5))});
      labels.push_back(std::string(1, char('p' + rng() % 3)));
    }
    const InstanceSet s = InstanceSet::build({"f0", "f1"}, rows, labels);
    const auto ws = feature_weights(s, Weighting::kInfoGain);
    for (std::size_t f = 0; f < 2; ++f) {
      const double want = std::max(0.0, oracle::info_gain(rows, labels, f));
      CHECK(std::abs(ws[f] - want) < 1e-9);
    }
  }
}

TEST_CASE("weighting names") {
  for (Weighting w : {Weighting::kInfoGain, Weighting::kGainRatio, Weighting::kNone}) {
    CHECK(parse_weighting(weighting_name(w)) == w);
  }
  CHECK_THROWS_AS(parse_weighting("chi2"), InvalidArgument);
}
