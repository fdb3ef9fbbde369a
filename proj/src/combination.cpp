#include "npchunk/combination.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <unordered_map>

#include "npchunk/error.hpp"
#include "npchunk/evaluation.hpp"

namespace npchunk {

namespace {

constexpr BracketSide kSides[] = {BracketSide::kOpen, BracketSide::kClose};

// Sum in ascending order so the result does not depend on classifier order.
double canonical_sum(std::vector<double> &terms) {
  std::sort(terms.begin(), terms.end());
  double s = 0.0;
  for (double t : terms) s += t;
  return s;
}

void check_gold(const StreamBundle &bundle, std::span<const PhraseSet> gold) {
  bundle.validate();
  if (bundle.classifier_count() == 0) throw InvalidArgument("no classifiers to combine");
  if (gold.size() != bundle.sentence_count()) {
    throw InvalidArgument("gold and classifier outputs differ in sentence count");
  }
  for (std::size_t s = 0; s < gold.size(); ++s) {
    if (!gold[s].fits(bundle.streams[0][s].open.size())) {
      throw InvalidArgument("gold phrases do not fit sentence " + std::to_string(s));
    }
  }
}

}  // namespace

void StreamBundle::add(std::string name, std::vector<BracketStream> outputs) {
  names.push_back(std::move(name));
  streams.push_back(std::move(outputs));
}

void StreamBundle::validate() const {
  if (names.size() != streams.size()) {
    throw InvalidArgument("classifier names and outputs differ in count");
  }
  std::set<std::string_view> seen;
  for (const auto &n : names) {
    if (!seen.insert(n).second) throw InvalidArgument("duplicate classifier '" + n + "'");
  }
  for (std::size_t c = 0; c < streams.size(); ++c) {
    if (streams[c].size() != streams[0].size()) {
      throw InvalidArgument("classifier '" + names[c] + "' covers " +
                            std::to_string(streams[c].size()) + " sentences, expected " +
                            std::to_string(streams[0].size()));
    }
    for (std::size_t s = 0; s < streams[c].size(); ++s) {
      const BracketStream &x = streams[c][s];
      if (x.open.size() != x.close.size() ||
          x.open.size() != streams[0][s].open.size()) {
        throw InvalidArgument("classifier '" + names[c] + "' misaligned at sentence " +
                              std::to_string(s));
      }
    }
  }
}

StreamBundle StreamBundle::select(std::span<const std::string> wanted) const {
  StreamBundle out;
  for (const auto &w : wanted) {
    const auto it = std::find(names.begin(), names.end(), w);
    if (it == names.end()) throw InvalidArgument("unknown classifier '" + w + "'");
    out.add(w, streams[static_cast<std::size_t>(it - names.begin())]);
  }
  return out;
}

BracketStream combine_internal(std::span<const ChunkOutput> outputs) {
  if (outputs.size() != 5) {
    throw InvalidArgument("internal combination needs exactly five outputs");
  }
  std::array<int, 5> per_repr{};
  for (const ChunkOutput &o : outputs) {
    if (const auto *t = std::get_if<TagSequence>(&o)) {
      ++per_repr[static_cast<std::size_t>(to_representation(t->scheme))];
    } else {
      ++per_repr[static_cast<std::size_t>(Representation::kOpenClose)];
    }
  }
  if (std::any_of(per_repr.begin(), per_repr.end(), [](int n) { return n != 1; })) {
    throw InvalidArgument("internal combination needs one output per representation");
  }
  const std::size_t n = output_length(outputs[0]);
  StreamBundle bundle;
  for (const ChunkOutput &o : outputs) {
    if (output_length(o) != n) throw InvalidArgument("outputs differ in length");
    bundle.add(std::to_string(bundle.names.size()), {output_brackets(o)});
  }
  return majority_vote(bundle)[0];
}

std::string_view vote_method_name(VoteMethod method) {
  switch (method) {
    case VoteMethod::kMajority: return "majority";
    case VoteMethod::kTotPrecision: return "totprecision";
    case VoteMethod::kTagPrecision: return "tagprecision";
    case VoteMethod::kPrecisionRecall: return "precisionrecall";
    case VoteMethod::kTagPair: return "tagpair";
  }
  return "?";
}

VoteMethod parse_vote_method(std::string_view name) {
  std::string s;
  for (char c : name) {
    if (c == '-' || c == '_') continue;
    s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  for (VoteMethod m : kAllVoteMethods) {
    if (s == vote_method_name(m)) return m;
  }
  throw InvalidArgument("unknown voting method '" + std::string(name) + "'");
}

std::size_t VoteWeights::pair_index(std::size_t i, std::size_t j, std::size_t n) {
  if (i >= j || j >= n) throw InvalidArgument("pair index needs i < j < n");
  // Row-major over the strict upper triangle.
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

VoteWeights estimate_weights(const StreamBundle &tune, std::span<const PhraseSet> gold,
                             VoteMethod method) {
  check_gold(tune, gold);
  const std::size_t m = tune.classifier_count();
  std::size_t words = 0;
  std::vector<BracketStream> truth;
  truth.reserve(gold.size());
  for (std::size_t s = 0; s < gold.size(); ++s) {
    truth.push_back(to_brackets(gold[s], tune.streams[0][s].open.size()));
    words += truth.back().open.size();
  }
  if (words == 0) throw InvalidArgument("empty tuning set");

  VoteWeights w;
  w.method = method;
  w.names = tune.names;
  w.stats.resize(m);
  w.pairs.resize(m * (m - 1) / 2);

  for (std::size_t side = 0; side < 2; ++side) {
    const BracketSide bs = kSides[side];
    for (std::size_t c = 0; c < m; ++c) {
      // confusion[out][gold]
      std::array<std::array<std::size_t, 2>, 2> conf{};
      for (std::size_t s = 0; s < truth.size(); ++s) {
        const auto &out = side_of(tune.streams[c][s], bs);
        const auto &ref = side_of(truth[s], bs);
        for (std::size_t i = 0; i < out.size(); ++i) ++conf[out[i]][ref[i]];
      }
      SideStats &st = w.stats[c][side];
      st.accuracy = static_cast<double>(conf[0][0] + conf[1][1]) / static_cast<double>(words);
      for (int v = 0; v < 2; ++v) {
        const std::size_t out_v = conf[v][0] + conf[v][1];
        const std::size_t gold_v = conf[0][v] + conf[1][v];
        st.precision_backed_off[v] = out_v == 0;
        st.recall_backed_off[v] = gold_v == 0;
        st.precision[v] = out_v == 0 ? st.accuracy
                                     : static_cast<double>(conf[v][v]) / static_cast<double>(out_v);
        st.recall[v] = gold_v == 0 ? st.accuracy
                                   : static_cast<double>(conf[v][v]) / static_cast<double>(gold_v);
      }
    }
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        PairTable &table = w.pairs[VoteWeights::pair_index(i, j, m)][side];
        std::array<std::array<std::size_t, 2>, 4> counts{};
        for (std::size_t s = 0; s < truth.size(); ++s) {
          const auto &a = side_of(tune.streams[i][s], bs);
          const auto &b = side_of(tune.streams[j][s], bs);
          const auto &ref = side_of(truth[s], bs);
          for (std::size_t k = 0; k < a.size(); ++k) ++counts[2 * a[k] + b[k]][ref[k]];
        }
        for (std::size_t cell = 0; cell < 4; ++cell) {
          const std::size_t n = counts[cell][0] + counts[cell][1];
          table.count[cell] = n;
          for (int g = 0; g < 2; ++g) {
            table.distribution[cell][g] =
                n == 0 ? 0.0 : static_cast<double>(counts[cell][g]) / static_cast<double>(n);
          }
        }
      }
    }
  }
  return w;
}

std::vector<BracketStream> vote(const StreamBundle &bundle, const VoteWeights &weights) {
  bundle.validate();
  const std::size_t m = bundle.classifier_count();
  if (m == 0) throw InvalidArgument("no classifiers to combine");
  if (weights.method != VoteMethod::kMajority) {
    if (weights.names.size() != m || weights.stats.size() != m) {
      throw InvalidArgument("voting weights were estimated for other classifiers");
    }
    // Weights travel with names; allow any classifier order.
    if (weights.names != bundle.names) {
      std::vector<std::size_t> idx(m);
      for (std::size_t c = 0; c < m; ++c) {
        const auto it = std::find(weights.names.begin(), weights.names.end(), bundle.names[c]);
        if (it == weights.names.end()) {
          throw InvalidArgument("no voting weights for classifier '" + bundle.names[c] + "'");
        }
        idx[c] = static_cast<std::size_t>(it - weights.names.begin());
      }
      StreamBundle reordered;
      for (std::size_t c = 0; c < m; ++c) reordered.add("", {});
      for (std::size_t c = 0; c < m; ++c) {
        reordered.names[idx[c]] = bundle.names[c];
        reordered.streams[idx[c]] = bundle.streams[c];
      }
      return vote(reordered, weights);
    }
  }

  std::vector<BracketStream> out;
  out.reserve(bundle.sentence_count());
  std::array<std::vector<double>, 2> terms;
  std::vector<bool> values(m);
  for (std::size_t s = 0; s < bundle.sentence_count(); ++s) {
    const std::size_t n = bundle.streams[0][s].open.size();
    BracketStream result(n);
    for (std::size_t side = 0; side < 2; ++side) {
      const BracketSide bs = kSides[side];
      auto &dest = side_of(result, bs);
      for (std::size_t i = 0; i < n; ++i) {
        terms[0].clear();
        terms[1].clear();
        for (std::size_t c = 0; c < m; ++c) values[c] = side_of(bundle.streams[c][s], bs)[i];
        switch (weights.method) {
          case VoteMethod::kMajority:
            for (std::size_t c = 0; c < m; ++c) terms[values[c]].push_back(1.0);
            break;
          case VoteMethod::kTotPrecision:
            for (std::size_t c = 0; c < m; ++c) {
              terms[values[c]].push_back(weights.stats[c][side].accuracy);
            }
            break;
          case VoteMethod::kTagPrecision:
            for (std::size_t c = 0; c < m; ++c) {
              terms[values[c]].push_back(weights.stats[c][side].precision[values[c]]);
            }
            break;
          case VoteMethod::kPrecisionRecall:
            for (std::size_t c = 0; c < m; ++c) {
              const SideStats &st = weights.stats[c][side];
              const bool v = values[c];
              terms[v].push_back(st.precision[v]);
              terms[!v].push_back(1.0 - st.recall[!v]);
            }
            break;
          case VoteMethod::kTagPair:
            if (weights.pairs.size() != m * (m - 1) / 2) {
              throw InvalidArgument("voting weights lack pair tables");
            }
            for (std::size_t a = 0; a < m; ++a) {
              for (std::size_t b = a + 1; b < m; ++b) {
                const PairTable &t = weights.pairs[VoteWeights::pair_index(a, b, m)][side];
                const std::size_t cell = 2 * values[a] + values[b];
                if (t.count[cell] == 0) {
                  terms[values[a]].push_back(weights.stats[a][side].precision[values[a]]);
                  terms[values[b]].push_back(weights.stats[b][side].precision[values[b]]);
                } else {
                  terms[0].push_back(t.distribution[cell][0]);
                  terms[1].push_back(t.distribution[cell][1]);
                }
              }
            }
            if (m == 1) terms[values[0]].push_back(1.0);
            break;
        }
        const double no = canonical_sum(terms[0]);
        const double yes = canonical_sum(terms[1]);
        dest[i] = yes > no;
      }
    }
    out.push_back(std::move(result));
  }
  return out;
}

std::vector<BracketStream> majority_vote(const StreamBundle &bundle) {
  return vote(bundle, VoteWeights{});
}

std::size_t StackedModel::arity() const {
  return names_.size() + (options_.features == StackFeatures::kTagsPos ? 1 : 0);
}

namespace {

std::vector<std::string> stack_row(const StreamBundle &bundle, std::size_t s, std::size_t i,
                                   BracketSide side, const Corpus *corpus, bool with_pos) {
  std::vector<std::string> row;
  row.reserve(bundle.classifier_count() + 1);
  for (std::size_t c = 0; c < bundle.classifier_count(); ++c) {
    row.push_back(side_of(bundle.streams[c][s], side)[i] ? "1" : "0");
  }
  if (with_pos) row.push_back(corpus->sentences[s].tokens[i].pos);
  return row;
}

void check_corpus(const StreamBundle &bundle, const StackOptions &options,
                  const Corpus *corpus) {
  if (options.features != StackFeatures::kTagsPos) return;
  if (corpus == nullptr) throw InvalidArgument("stacking with POS needs the corpus");
  if (corpus->size() != bundle.sentence_count()) {
    throw InvalidArgument("corpus and classifier outputs differ in sentence count");
  }
  for (std::size_t s = 0; s < corpus->size(); ++s) {
    if (corpus->sentences[s].tokens.size() != bundle.streams[0][s].open.size()) {
      throw InvalidArgument("corpus and classifier outputs differ at sentence " +
                            std::to_string(s));
    }
  }
}

}  // namespace

StackedModel stack_train(const StreamBundle &tune, std::span<const PhraseSet> gold,
                         const StackOptions &options, const Corpus *corpus) {
  check_gold(tune, gold);
  check_corpus(tune, options, corpus);
  if (options.learner == MetaLearner::kMemoryBased && options.k < 1) {
    throw InvalidArgument("k must be at least 1");
  }
  const bool with_pos = options.features == StackFeatures::kTagsPos;

  StackedModel model;
  model.options_ = options;
  model.names_ = tune.names;
  std::vector<std::string> slots = tune.names;
  if (with_pos) slots.push_back("pos");

  for (BracketSide side : kSides) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> labels;
    for (std::size_t s = 0; s < gold.size(); ++s) {
      const std::size_t n = tune.streams[0][s].open.size();
      const BracketStream truth = to_brackets(gold[s], n);
      for (std::size_t i = 0; i < n; ++i) {
        rows.push_back(stack_row(tune, s, i, side, corpus, with_pos));
        labels.push_back(side_of(truth, side)[i] ? "1" : "0");
      }
    }
    if (rows.empty()) throw InvalidArgument("empty tuning set");
    model.instances_ += rows.size();
    InstanceSet set = InstanceSet::build(slots, rows, labels);
    StackedModel::Side meta{set.codec, KnnModel{}, slots};
    if (options.learner == MetaLearner::kMemoryBased) {
      meta.model = KnnModel::train(set, {options.k, Weighting::kInfoGain});
    } else {
      meta.model = IgTreeModel::train(set);
    }
    model.sides_.push_back(std::move(meta));
  }
  return model;
}

std::vector<BracketStream> stack_apply(const StackedModel &model, const StreamBundle &test,
                                       const Corpus *corpus) {
  test.validate();
  if (test.names != model.names_) {
    throw InvalidArgument("stacked model expects the classifiers it was trained on");
  }
  check_corpus(test, model.options_, corpus);
  const bool with_pos = model.options_.features == StackFeatures::kTagsPos;

  std::vector<BracketStream> out;
  out.reserve(test.sentence_count());
  std::vector<std::uint32_t> coded;
  for (std::size_t s = 0; s < test.sentence_count(); ++s) {
    const std::size_t n = test.streams[0][s].open.size();
    BracketStream result(n);
    for (std::size_t side = 0; side < 2; ++side) {
      const StackedModel::Side &meta = model.sides_[side];
      for (std::size_t i = 0; i < n; ++i) {
        const auto row = stack_row(test, s, i, kSides[side], corpus, with_pos);
        coded.resize(row.size());
        for (std::size_t f = 0; f < row.size(); ++f) coded[f] = meta.codec.find(f, row[f]);
        const bool v = std::visit(
            [&](const auto &m) { return m.classes().name(m.predict(coded)) == "1"; },
            meta.model);
        side_of(result, kSides[side])[i] = v;
      }
    }
    out.push_back(std::move(result));
  }
  return out;
}

Ranking rank_and_select(const StreamBundle &tune, std::span<const PhraseSet> gold,
                        std::size_t n) {
  check_gold(tune, gold);
  const std::size_t m = tune.classifier_count();
  if (n < 1 || n > m) {
    throw InvalidArgument("cannot select " + std::to_string(n) + " of " +
                          std::to_string(m) + " classifiers");
  }
  std::vector<double> f(m);
  for (std::size_t c = 0; c < m; ++c) f[c] = evaluate(tune.streams[c], gold).f_beta;
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (f[a] != f[b]) return f[a] > f[b];
    return tune.names[a] < tune.names[b];
  });
  Ranking r;
  r.n = n;
  for (std::size_t c : order) {
    r.names.push_back(tune.names[c]);
    r.f_scores.push_back(f[c]);
  }
  return r;
}

}  // namespace npchunk
