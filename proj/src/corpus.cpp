#include "npchunk/corpus.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "npchunk/error.hpp"

namespace npchunk {

namespace {

bool is_blank(char c) { return c == ' ' || c == '\t'; }

bool has_whitespace(const std::string &s) {
  for (char c : s) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') return true;
  }
  return false;
}

std::vector<std::string> split_fields(const std::string &line) {
  std::vector<std::string> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_blank(line[i])) ++i;
    if (i == line.size()) break;
    std::size_t j = i;
    while (j < line.size() && !is_blank(line[j])) ++j;
    fields.push_back(line.substr(i, j - i));
    i = j;
  }
  return fields;
}

void write_tokens(const Sentence &sentence,
                  const std::vector<std::string_view> &labels,
                  std::ostream &out) {
  for (std::size_t i = 0; i < sentence.tokens.size(); ++i) {
    out << sentence.tokens[i].word << ' ' << sentence.tokens[i].pos << ' '
        << labels[i] << '\n';
  }
  out << '\n';
}

std::vector<std::string_view> output_labels(const ChunkOutput &output) {
  std::vector<std::string_view> labels;
  if (const auto *tags = std::get_if<TagSequence>(&output)) {
    static constexpr std::string_view kSymbols[] = {"I", "O", "B", "E"};
    for (Tag t : tags->tags) {
      switch (t) {
        case Tag::kInside: labels.push_back(kSymbols[0]); break;
        case Tag::kOutside: labels.push_back(kSymbols[1]); break;
        case Tag::kBegin: labels.push_back(kSymbols[2]); break;
        case Tag::kEnd: labels.push_back(kSymbols[3]); break;
      }
    }
  } else {
    const auto &stream = std::get<BracketStream>(output);
    for (std::size_t i = 0; i < stream.size(); ++i) {
      labels.push_back(bracket_code(stream.open[i], stream.close[i]));
    }
  }
  return labels;
}

std::ifstream open_input(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  return in;
}

}  // namespace

void validate(const Sentence &sentence) {
  if (sentence.tokens.empty()) throw InvalidArgument("empty sentence");
  for (const Token &t : sentence.tokens) {
    if (t.word.empty() || t.pos.empty() || has_whitespace(t.word) ||
        has_whitespace(t.pos)) {
      throw InvalidArgument("token fields must be non-empty and contain no "
                            "whitespace");
    }
  }
  if (sentence.gold && !sentence.gold->fits(sentence.size())) {
    throw InvalidArgument("gold span outside sentence");
  }
}

std::size_t Corpus::token_count() const {
  std::size_t n = 0;
  for (const Sentence &s : sentences) n += s.size();
  return n;
}

bool Corpus::has_gold() const {
  for (const Sentence &s : sentences) {
    if (!s.gold) return false;
  }
  return true;
}

std::vector<PhraseSet> Corpus::gold() const {
  std::vector<PhraseSet> out;
  out.reserve(sentences.size());
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    if (!sentences[i].gold) {
      throw InvalidArgument("sentence " + std::to_string(i) +
                            " has no gold annotation");
    }
    out.push_back(*sentences[i].gold);
  }
  return out;
}

std::vector<std::size_t> Corpus::lengths() const {
  std::vector<std::size_t> out;
  out.reserve(sentences.size());
  for (const Sentence &s : sentences) out.push_back(s.size());
  return out;
}

std::vector<ColumnSentence> read_columns(std::istream &in) {
  std::vector<ColumnSentence> out;
  ColumnSentence current;
  std::string line;
  std::size_t line_no = 0;
  auto flush = [&]() {
    if (current.tokens.empty()) return;
    out.push_back(std::move(current));
    current = ColumnSentence{};
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> fields = split_fields(line);
    if (fields.empty()) {
      flush();
      continue;
    }
    if (fields.size() < 2 || fields.size() > 3) {
      throw FormatError("expected 2 or 3 columns, found " +
                            std::to_string(fields.size()),
                        line_no);
    }
    if (current.tokens.empty()) current.first_line = line_no;
    const bool labelled = fields.size() == 3;
    const bool sentence_labelled = !current.labels.empty();
    if (!current.tokens.empty() && labelled != sentence_labelled) {
      throw FormatError("label column present for some but not all tokens",
                        line_no);
    }
    current.tokens.push_back({std::move(fields[0]), std::move(fields[1])});
    if (labelled) current.labels.push_back(std::move(fields[2]));
  }
  flush();
  return out;
}

ChunkOutput interpret_labels(const std::vector<std::string> &labels,
                             std::optional<Representation> repr) {
  if (!repr) {
    bool brackets = false, begin = false, end = false;
    for (const std::string &l : labels) {
      if (l == "B") begin = true;
      else if (l == "E") end = true;
      else if (l != "I" && l != "O") brackets = true;
    }
    if (brackets) {
      repr = Representation::kOpenClose;
    } else if (begin && end) {
      throw InvalidArgument("sentence mixes B and E tags");
    } else {
      repr = end ? Representation::kIoe1 : Representation::kIob1;
    }
  }
  if (*repr == Representation::kOpenClose) {
    BracketStream stream(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
      bool open, close;
      if (!parse_bracket_code(labels[i], open, close)) {
        throw InvalidArgument("'" + labels[i] + "' is not a bracket code");
      }
      stream.open[i] = open;
      stream.close[i] = close;
    }
    return stream;
  }
  TagScheme scheme = parse_scheme(representation_name(*repr));
  return parse_tags(std::span<const std::string>(labels), scheme);
}

Corpus read_corpus(std::istream &in, const ReadOptions &options) {
  Corpus corpus;
  for (ColumnSentence &raw : read_columns(in)) {
    Sentence sentence{std::move(raw.tokens), std::nullopt};
    if (!raw.labels.empty()) {
      try {
        sentence.gold =
            output_phrases(interpret_labels(raw.labels, options.representation));
      } catch (const InvalidArgument &e) {
        throw FormatError(e.what(), raw.first_line);
      }
    }
    corpus.sentences.push_back(std::move(sentence));
  }
  return corpus;
}

Corpus read_corpus_file(const std::string &path, const ReadOptions &options) {
  std::ifstream in = open_input(path);
  try {
    return read_corpus(in, options);
  } catch (const FormatError &e) {
    throw FormatError(path + ": " + e.what(), 0);
  }
}

void write_corpus(const Corpus &corpus, Representation repr, std::ostream &out) {
  for (std::size_t i = 0; i < corpus.sentences.size(); ++i) {
    const Sentence &s = corpus.sentences[i];
    if (!s.gold) {
      throw InvalidArgument("sentence " + std::to_string(i) +
                            " has no annotation to write");
    }
    ChunkOutput output =
        repr == Representation::kOpenClose
            ? ChunkOutput(to_brackets(*s.gold, s.size()))
            : ChunkOutput(encode(*s.gold, s.size(),
                                 parse_scheme(representation_name(repr))));
    write_tokens(s, output_labels(output), out);
  }
}

void write_corpus_file(const Corpus &corpus, Representation repr,
                       const std::string &path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  write_corpus(corpus, repr, out);
  if (!out) throw Error("write to '" + path + "' failed");
}

void write_outputs(const Corpus &corpus, const std::vector<ChunkOutput> &outputs,
                   std::ostream &out) {
  if (outputs.size() != corpus.size()) {
    throw InvalidArgument("output count does not match sentence count");
  }
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    if (output_length(outputs[i]) != corpus.sentences[i].size()) {
      throw InvalidArgument("output length does not match sentence " +
                            std::to_string(i));
    }
    write_tokens(corpus.sentences[i], output_labels(outputs[i]), out);
  }
}

SystemOutput read_system_output(std::istream &in) {
  SystemOutput result;
  for (ColumnSentence &raw : read_columns(in)) {
    if (raw.labels.empty()) {
      throw FormatError("system output has no label column", raw.first_line);
    }
    try {
      result.streams.push_back(output_brackets(interpret_labels(raw.labels)));
    } catch (const InvalidArgument &e) {
      throw FormatError(e.what(), raw.first_line);
    }
    result.corpus.sentences.push_back({std::move(raw.tokens), std::nullopt});
  }
  return result;
}

SystemOutput read_system_output_file(const std::string &path) {
  std::ifstream in = open_input(path);
  try {
    return read_system_output(in);
  } catch (const FormatError &e) {
    throw FormatError(path + ": " + e.what(), 0);
  }
}

void check_aligned(const Corpus &a, const Corpus &b) {
  if (a.size() != b.size()) {
    throw InvalidArgument("sentence counts differ (" + std::to_string(a.size()) +
                          " vs " + std::to_string(b.size()) + ")");
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto &x = a.sentences[i].tokens;
    const auto &y = b.sentences[i].tokens;
    if (x.size() != y.size()) {
      throw InvalidArgument("sentence " + std::to_string(i) +
                            " differs in length");
    }
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (x[j].word != y[j].word) {
        throw InvalidArgument("sentence " + std::to_string(i) + " word " +
                              std::to_string(j) + " differs ('" + x[j].word +
                              "' vs '" + y[j].word + "')");
      }
    }
  }
}

std::pair<Corpus, Corpus> split(const Corpus &corpus, const SplitSpec &spec) {
  if (corpus.empty()) throw InvalidArgument("cannot split an empty corpus");
  if (!(spec.train_fraction > 0.0 && spec.train_fraction <= 1.0)) {
    throw InvalidArgument("train fraction must lie in (0, 1]");
  }
  const std::size_t n = corpus.size();
  std::vector<bool> tune(n, false);
  if (spec.train_fraction < 1.0) {
    if (spec.mode == SplitMode::kPrefix) {
      auto n_train = static_cast<std::size_t>(
          std::ceil(spec.train_fraction * static_cast<double>(n) - 1e-9));
      for (std::size_t i = n_train; i < n; ++i) tune[i] = true;
    } else {
      const auto period = static_cast<std::size_t>(
          std::max(1.0, std::round(1.0 / (1.0 - spec.train_fraction))));
      for (std::size_t i = 0; i < n; ++i) tune[i] = i % period == period - 1;
    }
  }
  std::pair<Corpus, Corpus> parts;
  for (std::size_t i = 0; i < n; ++i) {
    (tune[i] ? parts.second : parts.first).sentences.push_back(corpus.sentences[i]);
  }
  if (spec.require_both && (parts.first.empty() || parts.second.empty())) {
    throw InvalidArgument("split leaves the " +
                          std::string(parts.first.empty() ? "train" : "tune") +
                          " part empty");
  }
  return parts;
}

SplitMode parse_split_mode(const std::string &name) {
  if (name == "prefix") return SplitMode::kPrefix;
  if (name == "interleaved") return SplitMode::kInterleaved;
  throw InvalidArgument("unknown split mode '" + name + "'");
}

}  // namespace npchunk
