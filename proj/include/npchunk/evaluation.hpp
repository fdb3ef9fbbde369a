#ifndef NPCHUNK_EVALUATION_HPP_
#define NPCHUNK_EVALUATION_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "npchunk/chunk.hpp"

namespace npchunk {

// Phrase-level scores, micro-averaged over a corpus, plus word-level
// accuracies of the open and close bracket decisions. Ratios are in [0, 1];
// rounding happens only in render_report.
struct EvalReport {
  std::size_t found_correct = 0;
  std::size_t found_total = 0;
  std::size_t gold_total = 0;
  std::size_t words = 0;
  std::size_t open_correct = 0;
  std::size_t close_correct = 0;
  double beta = 1.0;
  double precision = 0.0;
  double recall = 0.0;
  double f_beta = 0.0;
  double accuracy_open = 0.0;
  double accuracy_close = 0.0;
};

// (1 + b^2) p r / (b^2 p + r); 0 when the denominator is 0.
// Throws InvalidArgument for beta <= 0 or ratios outside [0, 1].
double f_beta(double precision, double recall, double beta = 1.0);

// A predicted span counts as correct iff the same (start, end) span is in the
// gold set of the same sentence.
EvalReport evaluate(std::span<const PhraseSet> predicted,
                    std::span<const PhraseSet> gold,
                    std::span<const std::size_t> lengths, double beta = 1.0);

// Bracket accuracies are taken from the raw streams; phrases come from
// pair_brackets.
EvalReport evaluate(std::span<const BracketStream> predicted,
                    std::span<const PhraseSet> gold, double beta = 1.0);

struct NamedReport {
  std::string name;
  EvalReport report;
};

// Fixed-width table: name, O and C accuracy, precision, recall (percent, two
// decimals) and F (times 100, two decimals).
std::string render_report(std::span<const NamedReport> reports);

// `name.metric=value` lines with full precision, for scripts.
std::string render_metrics(std::span<const NamedReport> reports);

}  // namespace npchunk

#endif  // NPCHUNK_EVALUATION_HPP_
