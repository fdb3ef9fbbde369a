#include "npchunk/evaluation.hpp"

#include <algorithm>
#include <cstdio>

#include "npchunk/error.hpp"

namespace npchunk {

namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

std::size_t count_matches(const std::vector<bool> &a, const std::vector<bool> &b) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) n += a[i] == b[i];
  return n;
}

void add_phrases(EvalReport &r, const PhraseSet &pred, const PhraseSet &gold) {
  r.found_total += pred.size();
  r.gold_total += gold.size();
  // Both sets are sorted; merge.
  auto p = pred.begin();
  auto g = gold.begin();
  while (p != pred.end() && g != gold.end()) {
    if (*p == *g) {
      ++r.found_correct;
      ++p;
      ++g;
    } else if (*p < *g) {
      ++p;
    } else {
      ++g;
    }
  }
}

void add_brackets(EvalReport &r, const BracketStream &pred,
                  const BracketStream &gold) {
  r.words += gold.size();
  r.open_correct += count_matches(pred.open, gold.open);
  r.close_correct += count_matches(pred.close, gold.close);
}

void finish(EvalReport &r, double beta) {
  r.beta = beta;
  r.precision = ratio(r.found_correct, r.found_total);
  r.recall = ratio(r.found_correct, r.gold_total);
  r.f_beta = f_beta(r.precision, r.recall, beta);
  r.accuracy_open = ratio(r.open_correct, r.words);
  r.accuracy_close = ratio(r.close_correct, r.words);
}

std::string format_fixed(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", value * 100.0);
  return buf;
}

}  // namespace

double f_beta(double precision, double recall, double beta) {
  if (!(beta > 0.0)) throw InvalidArgument("beta must be positive");
  if (precision < 0.0 || precision > 1.0 || recall < 0.0 || recall > 1.0) {
    throw InvalidArgument("precision and recall must lie in [0, 1]");
  }
  const double b2 = beta * beta;
  const double den = b2 * precision + recall;
  if (den == 0.0) return 0.0;
  return (1.0 + b2) * precision * recall / den;
}

EvalReport evaluate(std::span<const PhraseSet> predicted,
                    std::span<const PhraseSet> gold,
                    std::span<const std::size_t> lengths, double beta) {
  if (predicted.size() != gold.size() || gold.size() != lengths.size()) {
    throw InvalidArgument("prediction and gold sentence counts differ");
  }
  EvalReport r;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (!predicted[i].fits(lengths[i]) || !gold[i].fits(lengths[i])) {
      throw InvalidArgument("span outside sentence " + std::to_string(i));
    }
    add_phrases(r, predicted[i], gold[i]);
    add_brackets(r, to_brackets(predicted[i], lengths[i]),
                 to_brackets(gold[i], lengths[i]));
  }
  finish(r, beta);
  return r;
}

EvalReport evaluate(std::span<const BracketStream> predicted,
                    std::span<const PhraseSet> gold, double beta) {
  if (predicted.size() != gold.size()) {
    throw InvalidArgument("prediction and gold sentence counts differ");
  }
  EvalReport r;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const BracketStream &stream = predicted[i];
    if (stream.open.size() != stream.close.size() ||
        !gold[i].fits(stream.size())) {
      throw InvalidArgument("stream does not match sentence " +
                            std::to_string(i));
    }
    add_phrases(r, pair_brackets(stream), gold[i]);
    add_brackets(r, stream, to_brackets(gold[i], stream.size()));
  }
  finish(r, beta);
  return r;
}

std::string render_report(std::span<const NamedReport> reports) {
  std::size_t width = 12;
  for (const NamedReport &r : reports) width = std::max(width, r.name.size());
  auto pad = [](std::string s, std::size_t w, bool left) {
    if (s.size() >= w) return s;
    return left ? s + std::string(w - s.size(), ' ')
                : std::string(w - s.size(), ' ') + s;
  };
  std::string out = pad("system", width, true);
  for (const char *h : {"O", "C", "precision", "recall", "F"}) {
    out += "  " + pad(h, 9, false);
  }
  out += '\n';
  for (const NamedReport &r : reports) {
    out += pad(r.name, width, true);
    for (double v : {r.report.accuracy_open, r.report.accuracy_close,
                     r.report.precision, r.report.recall, r.report.f_beta}) {
      out += "  " + pad(format_fixed(v), 9, false);
    }
    out += '\n';
  }
  return out;
}

std::string render_metrics(std::span<const NamedReport> reports) {
  std::string out;
  char buf[64];
  for (const NamedReport &r : reports) {
    const EvalReport &e = r.report;
    auto line = [&](const char *key, double v) {
      std::snprintf(buf, sizeof(buf), "%.17g", v);
      out += r.name + "." + key + "=" + buf + "\n";
    };
    auto count = [&](const char *key, std::size_t v) {
      out += r.name + "." + key + "=" + std::to_string(v) + "\n";
    };
    count("found_correct", e.found_correct);
    count("found_total", e.found_total);
    count("gold_total", e.gold_total);
    line("precision", e.precision);
    line("recall", e.recall);
    line("f_beta", e.f_beta);
    line("accuracy_open", e.accuracy_open);
    line("accuracy_close", e.accuracy_close);
  }
  return out;
}

}  // namespace npchunk
