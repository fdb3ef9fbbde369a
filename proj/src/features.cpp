#include "npchunk/features.hpp"

#include <algorithm>

#include "npchunk/error.hpp"

namespace npchunk {

namespace {

std::string offset_name(char prefix, int offset) {
  std::string s(1, prefix);
  if (offset > 0) s += '+';
  s += std::to_string(offset);
  return s;
}

}  // namespace

std::vector<std::string> ContextSpec::slot_names() const {
  std::vector<std::string> names;
  if (use_words) {
    for (int d = -word_left; d <= word_right; ++d) names.push_back(offset_name('w', d));
  }
  if (use_pos) {
    for (int d = -pos_left; d <= pos_right; ++d) names.push_back(offset_name('p', d));
  }
  for (int d = -history; d < 0; ++d) names.push_back(offset_name('t', d));
  if (uses_guide()) {
    for (int d = -guide_left; d <= guide_right; ++d) {
      names.push_back(offset_name('g', d));
    }
  }
  if (pos_bigrams) {
    names.push_back("p-1p0");
    names.push_back("p0p+1");
  }
  if (history_bigram) names.push_back("t-2t-1");
  if (history_pos) names.push_back("t-1p0");
  if (bias) names.push_back("bias");
  return names;
}

std::vector<std::string> extract_values(const Sentence &sentence,
                                        std::size_t index,
                                        const ContextSpec &spec,
                                        std::span<const std::string> history,
                                        std::span<const std::string> guide) {
  const auto n = static_cast<long>(sentence.size());
  const auto focus = static_cast<long>(index);
  if (focus >= n) throw InvalidArgument("feature index outside sentence");
  const int needed_history =
      std::max({spec.history, spec.history_bigram ? 2 : 0,
                spec.history_pos ? 1 : 0});
  if (needed_history > 0 && history.size() < index) {
    throw InvalidArgument("context needs predicted labels for preceding words");
  }
  if (spec.uses_guide() && guide.size() != sentence.size()) {
    throw InvalidArgument("context needs first-stage labels for the sentence");
  }

  const std::string boundary(kBoundary);
  auto word = [&](long i) {
    return i < 0 || i >= n ? boundary : sentence.tokens[i].word;
  };
  auto pos = [&](long i) {
    return i < 0 || i >= n ? boundary : sentence.tokens[i].pos;
  };
  auto hist = [&](long i) { return i < 0 ? boundary : history[i]; };

  std::vector<std::string> values;
  values.reserve(static_cast<std::size_t>(spec.word_left + spec.word_right +
                                          spec.pos_left + spec.pos_right +
                                          spec.history + 8));
  if (spec.use_words) {
    for (int d = -spec.word_left; d <= spec.word_right; ++d) values.push_back(word(focus + d));
  }
  if (spec.use_pos) {
    for (int d = -spec.pos_left; d <= spec.pos_right; ++d) values.push_back(pos(focus + d));
  }
  for (int d = -spec.history; d < 0; ++d) values.push_back(hist(focus + d));
  if (spec.uses_guide()) {
    for (int d = -spec.guide_left; d <= spec.guide_right; ++d) {
      const long i = focus + d;
      values.push_back(i < 0 || i >= n ? boundary : guide[i]);
    }
  }
  if (spec.pos_bigrams) {
    values.push_back(pos(focus - 1) + "|" + pos(focus));
    values.push_back(pos(focus) + "|" + pos(focus + 1));
  }
  if (spec.history_bigram) values.push_back(hist(focus - 2) + "|" + hist(focus - 1));
  if (spec.history_pos) values.push_back(hist(focus - 1) + "|" + pos(focus));
  if (spec.bias) values.emplace_back("1");
  return values;
}

FeatureVector extract_features(const Sentence &sentence, std::size_t index,
                               const ContextSpec &spec,
                               std::span<const std::string> history,
                               std::span<const std::string> guide) {
  std::vector<std::string> values =
      extract_values(sentence, index, spec, history, guide);
  std::vector<std::string> names = spec.slot_names();
  FeatureVector out;
  out.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    out.push_back({std::move(names[i]), std::move(values[i])});
  }
  return out;
}

}  // namespace npchunk
