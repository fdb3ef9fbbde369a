#include <doctest.h>

#include <random>

#include "npchunk/combination.hpp"
#include "npchunk/error.hpp"
#include "npchunk/evaluation.hpp"
#include "npchunk/synthetic.hpp"
#include "properties.hpp"

using namespace npchunk;
using props::from_codes;

namespace {

constexpr std::size_t kOpen = 0, kClose = 1;

std::vector<PhraseSet> phrases(const std::vector<BracketStream> &streams) {
  std::vector<PhraseSet> out;
  for (const auto &s : streams) out.push_back(pair_brackets(s));
  return out;
}

double f_score(const std::vector<BracketStream> &pred, const std::vector<PhraseSet> &gold) {
  return evaluate(pred, gold).f_beta;
}

}  // namespace

TEST_CASE("TotPrecision weighs accuracy") {
  StreamBundle b;
  b.add("a", {from_codes({"["})});
  b.add("b", {from_codes({"."})});
  b.add("c", {from_codes({"."})});
  VoteWeights w;
  w.method = VoteMethod::kTotPrecision;
  w.names = b.names;
  w.stats.resize(3);
  const double acc[3] = {0.9, 0.4, 0.4};
  for (std::size_t c = 0; c < 3; ++c) w.stats[c][kOpen].accuracy = w.stats[c][kClose].accuracy = acc[c];
  CHECK(vote(b, w)[0].open[0]);  // 0.9 > 0.8
  w.stats[0][kOpen].accuracy = 0.8;
  CHECK_FALSE(vote(b, w)[0].open[0]);  // tie: no bracket
  CHECK_FALSE(majority_vote(b)[0].open[0]);
}

TEST_CASE("tuning statistics by hand") {
  const auto f = props::hand_fixture();
  const VoteWeights w = estimate_weights(f.bundle, f.gold, VoteMethod::kPrecisionRecall);
  REQUIRE(w.names == std::vector<std::string>{"a", "b", "c"});
  const SideStats &a = w.stats[0][kOpen];
  CHECK(a.accuracy == 1.0);
  CHECK(a.precision[1] == 1.0);

  const SideStats &bo = w.stats[1][kOpen];
  CHECK(bo.accuracy == doctest::Approx(0.8));
  CHECK(bo.precision[0] == doctest::Approx(5.0 / 6));
  CHECK(bo.precision[1] == doctest::Approx(3.0 / 4));
  CHECK(bo.recall[0] == doctest::Approx(5.0 / 6));
  CHECK(bo.recall[1] == doctest::Approx(3.0 / 4));
  const SideStats &bc = w.stats[1][kClose];
  CHECK(bc.accuracy == doctest::Approx(0.7));
  CHECK(bc.precision[0] == doctest::Approx(4.0 / 5));
  CHECK(bc.precision[1] == doctest::Approx(3.0 / 5));
  CHECK(bc.recall[0] == doctest::Approx(4.0 / 6));
  CHECK(bc.recall[1] == doctest::Approx(3.0 / 4));
  for (int v = 0; v < 2; ++v) CHECK_FALSE(bc.precision_backed_off[v]);
}

TEST_CASE("empty cells back off to accuracy") {
  StreamBundle b;
  b.add("never", {from_codes({".", ".", ".", "."})});
  const std::vector<PhraseSet> gold{PhraseSet({{1, 1}})};
  const VoteWeights w = estimate_weights(b, gold, VoteMethod::kTagPrecision);
  const SideStats &s = w.stats[0][kOpen];
  CHECK(s.accuracy == 0.75);
  CHECK(s.precision_backed_off[1]);
  CHECK(s.precision[1] == 0.75);
  CHECK_FALSE(s.precision_backed_off[0]);
  CHECK(s.precision[0] == 0.75);
  CHECK(s.recall[1] == 0.0);

  const std::vector<PhraseSet> none{PhraseSet{}};
  const VoteWeights w2 = estimate_weights(b, none, VoteMethod::kPrecisionRecall);
  CHECK(w2.stats[0][kOpen].recall_backed_off[1]);
  CHECK(w2.stats[0][kOpen].recall[1] == 1.0);
}

TEST_CASE("PrecisionRecall counts the competing recall") {
  // One classifier said no bracket; its recall of brackets is poor, so the
  // missed-bracket mass outweighs its precision on no-bracket.
  StreamBundle tune;
  tune.add("x", {from_codes({".", ".", ".", "[]", "."})});
  const std::vector<PhraseSet> gold{PhraseSet({{0, 0}, {1, 1}, {2, 2}, {3, 3}})};
  const VoteWeights w = estimate_weights(tune, gold, VoteMethod::kPrecisionRecall);
  // precision(no) = 1/4, recall(yes) = 1/4: 0.25 for no, 0.75 for yes.
  StreamBundle test;
  test.add("x", {from_codes({"."})});
  CHECK(vote(test, w)[0].open[0]);
  const VoteWeights tp = estimate_weights(tune, gold, VoteMethod::kTagPrecision);
  CHECK_FALSE(vote(test, tp)[0].open[0]);
}

TEST_CASE("TagPair matches a direct tally on the hand corpus") {
  const auto f = props::hand_fixture();
  const VoteWeights w = estimate_weights(f.bundle, f.gold, VoteMethod::kTagPair);
  const auto got = vote(f.bundle, w);
  CHECK(got[0] == props::tagpair_reference(f.bundle, f.gold, f.bundle, 0));
  // Classifier a is perfect, so every pair with a is decisive.
  CHECK(phrases(got)[0] == f.gold[0]);
}

TEST_CASE("TagPair matches a direct tally on random bundles") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 200; ++t) {
    const std::size_t m = 2 + rng() % 5;
    const auto vc = props::random_vote_case(rng, m, 0.35, 3 + rng() % 10);
    const VoteWeights w = estimate_weights(vc.tune, vc.tune_gold, VoteMethod::kTagPair);
    const auto got = vote(vc.test, w);
    for (std::size_t s = 0; s < got.size(); ++s) {
      CHECK(got[s] == props::tagpair_reference(vc.tune, vc.tune_gold, vc.test, s));
    }
  }
}

TEST_CASE("TagPair with two classifiers and a saturated table") {
  std::mt19937_64 rng(32);
  int saturated = 0;
  for (int t = 0; t < 100; ++t) {
    const auto vc = props::random_vote_case(rng, 2, 0.4, 30);
    const VoteWeights w = estimate_weights(vc.tune, vc.tune_gold, VoteMethod::kTagPair);
    bool full = true;
    for (std::size_t side = 0; side < 2; ++side) {
      for (std::size_t cell = 0; cell < 4; ++cell) full = full && w.pairs[0][side].count[cell] > 0;
    }
    if (!full) continue;
    ++saturated;
    const auto got = vote(vc.test, w);
    for (std::size_t s = 0; s < got.size(); ++s) {
      for (BracketSide side : props::kSides) {
        const std::size_t si = side == BracketSide::kOpen ? 0 : 1;
        for (std::size_t i = 0; i < got[s].size(); ++i) {
          const bool x = side_of(vc.test.streams[0][s], side)[i];
          const bool y = side_of(vc.test.streams[1][s], side)[i];
          const auto &d = w.pairs[0][si].distribution[2 * x + y];
          CHECK(side_of(got[s], side)[i] == (d[1] > d[0]));
        }
      }
    }
  }
  CHECK(saturated > 50);
}

TEST_CASE("voting properties") {
  const auto r = props::voting(200, 77);
  CHECK_MESSAGE(r.unanimity.failures == 0, r.unanimity.first);
  CHECK_MESSAGE(r.majority.failures == 0, r.majority.first);
  CHECK_MESSAGE(r.permutation.failures == 0, r.permutation.first);
  CHECK_MESSAGE(r.equal_weights.failures == 0, r.equal_weights.first);
  CHECK_MESSAGE(r.scaling.failures == 0, r.scaling.first);
  CHECK(r.unanimity.checked == 1000);
  CHECK(r.skipped_inconsistent < r.unanimity.checked / 2);
}

TEST_CASE("a single classifier votes for itself") {
  std::mt19937_64 rng(33);
  const auto vc = props::random_vote_case(rng, 1, 0.3, 20);
  for (VoteMethod m : kAllVoteMethods) {
    CAPTURE(vote_method_name(m));
    CHECK(vote(vc.test, estimate_weights(vc.tune, vc.tune_gold, m)) == vc.test.streams[0]);
  }
}

TEST_CASE("disjoint errors are outvoted") {
  const auto f = props::ensemble_fixture();
  const double combined = f_score(majority_vote(f.bundle), f.gold);
  CHECK(combined == 1.0);
  for (const auto &s : f.bundle.streams) CHECK(f_score(s, f.gold) < combined);
}

TEST_CASE("bundle validation") {
  StreamBundle b;
  b.add("a", {from_codes({"[", "]"})});
  CHECK_NOTHROW(b.validate());
  auto broken = [&](std::string name, std::vector<BracketStream> streams) {
    StreamBundle x = b;
    x.add(std::move(name), std::move(streams));
    return x;
  };
  CHECK_THROWS_AS(broken("a", {from_codes({"[", "]"})}).validate(), InvalidArgument);
  CHECK_THROWS_AS(broken("b", {from_codes({"[]"})}).validate(), InvalidArgument);
  CHECK_THROWS_AS(broken("c", {}).validate(), InvalidArgument);
  const std::vector<std::string> missing{"zz"};
  CHECK_THROWS_AS(b.select(missing), InvalidArgument);
  const VoteWeights w = estimate_weights(b, std::vector<PhraseSet>{PhraseSet({{0, 1}})},
                                         VoteMethod::kTotPrecision);
  StreamBundle other;
  other.add("q", {from_codes({"[", "]"})});
  CHECK_THROWS_AS(vote(other, w), InvalidArgument);
  CHECK_THROWS_AS(estimate_weights(b, std::vector<PhraseSet>{}, VoteMethod::kMajority),
                  InvalidArgument);
}

TEST_CASE("vote follows the weight order") {
  const auto f = props::hand_fixture();
  const VoteWeights w = estimate_weights(f.bundle, f.gold, VoteMethod::kTagPair);
  const std::vector<std::string> order{"c", "a", "b"};
  CHECK(vote(f.bundle.select(order), w) == vote(f.bundle, w));
}

TEST_CASE("method names") {
  for (VoteMethod m : kAllVoteMethods) CHECK(parse_vote_method(vote_method_name(m)) == m);
  CHECK(parse_vote_method("Tag-Pair") == VoteMethod::kTagPair);
  CHECK(parse_vote_method("PRECISION_RECALL") == VoteMethod::kPrecisionRecall);
  CHECK_THROWS_AS(parse_vote_method("borda"), InvalidArgument);
}

TEST_CASE("internal combination") {
  const PhraseSet gold({{1, 2}, {3, 3}, {5, 6}});
  std::vector<ChunkOutput> outputs;
  for (TagScheme s : kAllSchemes) outputs.emplace_back(encode(gold, 7, s));
  outputs.emplace_back(to_brackets(gold, 7));
  CHECK(combine_internal(outputs) == to_brackets(gold, 7));
  // Two of five disagree: the other three carry it.
  outputs[0] = encode(PhraseSet{}, 7, TagScheme::kIob1);
  outputs[4] = BracketStream(7);
  CHECK(pair_brackets(combine_internal(outputs)) == gold);

  std::vector<ChunkOutput> four(outputs.begin(), outputs.begin() + 4);
  CHECK_THROWS_AS(combine_internal(four), InvalidArgument);
  std::vector<ChunkOutput> dup = outputs;
  dup[1] = dup[0];
  CHECK_THROWS_AS(combine_internal(dup), InvalidArgument);
}

TEST_CASE("stacking") {
  std::mt19937_64 rng(41);
  auto vc = props::random_vote_case(rng, 3, 0.3, 30);
  // Replace c0 by a perfect classifier on both sets.
  auto perfect = [](const std::vector<PhraseSet> &gold, const StreamBundle &like) {
    std::vector<BracketStream> out;
    for (std::size_t s = 0; s < gold.size(); ++s) {
      out.push_back(to_brackets(gold[s], like.streams[0][s].size()));
    }
    return out;
  };
  vc.tune.streams[0] = perfect(vc.tune_gold, vc.tune);
  vc.test.streams[0] = perfect(vc.test_gold, vc.test);
  std::size_t words = 0;
  for (const auto &s : vc.tune.streams[0]) words += s.size();

  for (MetaLearner learner : {MetaLearner::kMemoryBased, MetaLearner::kDecisionTree}) {
    const StackedModel m = stack_train(vc.tune, vc.tune_gold, {learner, StackFeatures::kTagsOnly, 1}, nullptr);
    CHECK(m.instance_count() == 2 * words);
    CHECK(m.arity() == 3);
    CHECK(m.names() == vc.tune.names);
    CHECK(stack_apply(m, vc.test, nullptr) == vc.test.streams[0]);
  }
  StreamBundle renamed = vc.test;
  renamed.names[2] = "other";
  const StackedModel m = stack_train(vc.tune, vc.tune_gold, {}, nullptr);
  CHECK_THROWS_AS(stack_apply(m, renamed, nullptr), InvalidArgument);
  CHECK_THROWS_AS(stack_train(vc.tune, vc.tune_gold, {MetaLearner::kMemoryBased, StackFeatures::kTagsPos, 1}, nullptr),
                  InvalidArgument);
}

TEST_CASE("stacking with POS") {
  const Corpus corpus = generate_corpus({30, 12, 0.0});
  std::vector<PhraseSet> gold;
  std::vector<BracketStream> truth, shifted;
  for (const Sentence &s : corpus.sentences) {
    gold.push_back(*s.gold);
    truth.push_back(to_brackets(*s.gold, s.size()));
    // Misses every phrase opening at a determiner.
    BracketStream b = truth.back();
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s.tokens[i].pos == "DT") b.open[i] = false;
    }
    shifted.push_back(b);
  }
  StreamBundle bundle;
  bundle.add("x", shifted);
  const StackedModel plain = stack_train(bundle, gold, {MetaLearner::kDecisionTree, StackFeatures::kTagsOnly, 1}, &corpus);
  const StackedModel with_pos = stack_train(bundle, gold, {MetaLearner::kDecisionTree, StackFeatures::kTagsPos, 1}, &corpus);
  CHECK(with_pos.arity() == 2);
  // The POS tag tells the stacker where x misses; without it the rule is lost.
  CHECK(f_score(stack_apply(with_pos, bundle, &corpus), gold) == 1.0);
  CHECK(f_score(stack_apply(plain, bundle, &corpus), gold) < 1.0);
}

TEST_CASE("ranking") {
  const auto f = props::hand_fixture();
  const Ranking r = rank_and_select(f.bundle, f.gold, 2);
  REQUIRE(r.names.size() == 3);
  CHECK(r.names[0] == "a");
  CHECK(r.f_scores[0] == 1.0);
  CHECK(std::is_sorted(r.f_scores.rbegin(), r.f_scores.rend()));
  CHECK(r.selected().size() == 2);
  CHECK_THROWS_AS(rank_and_select(f.bundle, f.gold, 0), InvalidArgument);
  CHECK_THROWS_AS(rank_and_select(f.bundle, f.gold, 4), InvalidArgument);

  StreamBundle twins;
  twins.add("z", f.bundle.streams[1]);
  twins.add("y", f.bundle.streams[1]);
  CHECK(rank_and_select(twins, f.gold, 1).selected() == std::vector<std::string>{"y"});
}
