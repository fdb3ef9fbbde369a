#ifndef NPCHUNK_CORPUS_HPP_
#define NPCHUNK_CORPUS_HPP_

// Column-format corpora.
//
// One token per line, `WORD POS [LABEL]`, an empty line after every sentence.
// LABEL is a chunk tag (I, O, B, E) or a bracket code (".", "[", "]", "[]").
// Fields may be separated by any run of spaces or tabs on input; output uses
// a single space.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "npchunk/chunk.hpp"

namespace npchunk {

struct Token {
  std::string word;
  std::string pos;

  bool operator==(const Token &) const = default;
};

struct Sentence {
  std::vector<Token> tokens;
  std::optional<PhraseSet> gold;

  std::size_t size() const { return tokens.size(); }
  bool operator==(const Sentence &) const = default;
};

// Throws InvalidArgument if the sentence is empty, a token field is empty or
// contains whitespace, or gold does not fit.
void validate(const Sentence &sentence);

struct Corpus {
  std::vector<Sentence> sentences;

  std::size_t size() const { return sentences.size(); }
  bool empty() const { return sentences.empty(); }
  std::size_t token_count() const;
  bool has_gold() const;
  std::vector<PhraseSet> gold() const;
  std::vector<std::size_t> lengths() const;

  bool operator==(const Corpus &) const = default;
};

// A sentence as read, before the label column is interpreted.
struct ColumnSentence {
  std::vector<Token> tokens;
  std::vector<std::string> labels;  // empty when the file has two columns
  std::size_t first_line = 0;
};

std::vector<ColumnSentence> read_columns(std::istream &in);

// Interprets a label column. `repr` forces the representation; otherwise
// bracket codes select O+C, a B selects IOB1, an E selects IOE1 and a column
// of only I and O is read as IOB1. Throws InvalidArgument on symbols that do
// not fit.
ChunkOutput interpret_labels(const std::vector<std::string> &labels,
                             std::optional<Representation> repr = std::nullopt);

struct ReadOptions {
  std::optional<Representation> representation;
};

// Throws FormatError on malformed input.
Corpus read_corpus(std::istream &in, const ReadOptions &options = {});
Corpus read_corpus_file(const std::string &path, const ReadOptions &options = {});

// Writes gold phrases. Throws InvalidArgument if a sentence has no gold.
void write_corpus(const Corpus &corpus, Representation repr, std::ostream &out);
void write_corpus_file(const Corpus &corpus, Representation repr,
                       const std::string &path);

// Writes one learner's output per sentence: tags in their own scheme, or
// bracket codes for a BracketStream.
void write_outputs(const Corpus &corpus, const std::vector<ChunkOutput> &outputs,
                   std::ostream &out);

// Classifier output in the interchange format. Tag columns are decoded and
// converted to brackets; bracket-code columns are kept as they are.
struct SystemOutput {
  Corpus corpus;  // tokens only
  std::vector<BracketStream> streams;
};

SystemOutput read_system_output(std::istream &in);
SystemOutput read_system_output_file(const std::string &path);

// Throws InvalidArgument unless both corpora have the same tokens.
void check_aligned(const Corpus &a, const Corpus &b);

enum class SplitMode { kPrefix, kInterleaved };

struct SplitSpec {
  double train_fraction = 0.9;
  SplitMode mode = SplitMode::kPrefix;
  // When set, a split that leaves either part empty is an error.
  bool require_both = false;
};

// prefix: the first ceil(f*N) sentences train, the rest tune.
// interleaved: sentence i tunes iff i % m == m - 1 with m = round(1/(1-f)).
std::pair<Corpus, Corpus> split(const Corpus &corpus, const SplitSpec &spec);

SplitMode parse_split_mode(const std::string &name);

}  // namespace npchunk

#endif  // NPCHUNK_CORPUS_HPP_
