#include "npchunk/synthetic.hpp"

#include <array>
#include <random>
#include <span>
#include <string_view>

#include "npchunk/error.hpp"

namespace npchunk {

namespace {

using Words = std::span<const std::string_view>;

constexpr std::string_view kDet[] = {"the", "a", "this", "some", "every", "that"};
constexpr std::string_view kAdj[] = {"early", "new", "strong", "small", "major", "foreign",
                                     "local", "high", "low", "net", "annual", "key"};
constexpr std::string_view kNoun[] = {"trading", "gold", "market", "price", "company",
                                      "share", "year", "week", "rate", "stock", "bank",
                                      "deal", "plan", "profit", "chairman", "unit",
                                      "growth", "report", "government", "dollar"};
constexpr std::string_view kNouns[] = {"prices", "shares", "markets", "investors",
                                       "analysts", "banks", "profits", "rates", "traders",
                                       "bonds"};
constexpr std::string_view kName[] = {"Hong", "Kong", "Tokyo", "London", "Smith", "Jones",
                                      "Corp.", "Monday", "Friday", "Brown", "Zurich"};
constexpr std::string_view kPron[] = {"he", "it", "they", "we", "she"};
constexpr std::string_view kNumber[] = {"366.50", "10", "three", "1.5", "42", "two",
                                        "100", "7.25"};
constexpr std::string_view kUnit[] = {"ounce", "share", "year", "barrel", "ton"};
constexpr std::string_view kPastVerb[] = {"was", "rose", "fell", "said", "reported",
                                          "bought", "sold", "had", "expected"};
constexpr std::string_view kParticiple[] = {"quoted", "expected", "traded", "reported"};
constexpr std::string_view kModal[] = {"will", "could", "may"};
constexpr std::string_view kBaseVerb[] = {"buy", "sell", "report", "rise", "trade"};
constexpr std::string_view kPrep[] = {"in", "at", "of", "on", "for", "with", "from", "that"};
constexpr std::string_view kAdverb[] = {"also", "sharply", "still", "only"};
constexpr std::string_view kGerund[] = {"rising", "falling", "trading", "growing", "leading"};
constexpr std::string_view kWeekday[] = {"Monday", "Friday", "yesterday", "today"};

constexpr std::string_view kAllTags[] = {"DT", "JJ", "NN", "NNS", "NNP", "PRP", "CD", "$",
                                         "POS", "VBD", "VBN", "VBG", "MD", "VB", "IN", "RB",
                                         "CC", ",", "."};

class Builder {
 public:
  explicit Builder(std::uint64_t seed) : rng_(seed) {}

  // Raw engine output only: distribution classes differ between libraries.
  std::size_t pick(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }
  bool chance(double p) {
    return static_cast<double>(rng_() >> 11) * 0x1.0p-53 < p;
  }
  std::string_view any(Words words) { return words[pick(words.size())]; }

  void word(std::string_view w, std::string_view pos) {
    sentence_.tokens.push_back({std::string(w), std::string(pos)});
  }

  void noun_phrase() {
    const std::size_t start = sentence_.tokens.size();
    switch (pick(10)) {
      case 0:
      case 1:
      case 2: {
        word(any(kDet), "DT");
        const std::size_t adjectives = pick(3);
        for (std::size_t i = 0; i < adjectives; ++i) word(any(kAdj), "JJ");
        if (chance(0.25)) word(any(kNoun), "NN");
        word(any(kNoun), "NN");
        break;
      }
      case 3:
        if (chance(0.5)) {
          word(any(kAdj), "JJ");
        } else if (chance(0.4)) {
          word(any(kGerund), "VBG");  // "rising prices"
        }
        word(any(kNouns), "NNS");
        if (chance(0.3)) {  // "prices and profits": one phrase
          word("and", "CC");
          word(any(kNouns), "NNS");
        }
        break;
      case 4:
        word(any(kName), "NNP");
        if (chance(0.5)) word(any(kName), "NNP");
        break;
      case 5: word(any(kPron), "PRP"); break;
      case 6:
        word("$", "$");
        word(any(kNumber), "CD");
        close(start);
        if (chance(0.6)) {  // "$ 366.50 an ounce": two adjacent phrases
          const std::size_t rate = sentence_.tokens.size();
          word(chance(0.5) ? "a" : "an", "DT");
          word(any(kUnit), "NN");
          close(rate);
        }
        return;
      case 7:
        word(any(kNumber), "CD");
        word(any(kNouns), "NNS");
        break;
      default: {  // possessive: "[the company 's] [chairman]"
        if (chance(0.5)) word(any(kDet), "DT");
        if (chance(0.5)) {
          word(any(kNoun), "NN");
        } else {
          word(any(kName), "NNP");
        }
        word("'s", "POS");
        close(start);
        const std::size_t head = sentence_.tokens.size();
        if (chance(0.4)) word(any(kAdj), "JJ");
        word(any(kNoun), "NN");
        close(head);
        return;
      }
    }
    close(start);
  }

  void prepositional_phrase() {
    word(any(kPrep), "IN");
    noun_phrase();
    if (chance(0.2)) {  // "in Hong Kong Monday"
      const std::size_t start = sentence_.tokens.size();
      word(any(kWeekday), chance(0.5) ? "NNP" : "NN");
      close(start);
    }
  }

  Sentence sentence() {
    sentence_ = {};
    spans_.clear();
    if (chance(0.35)) {
      prepositional_phrase();
      word(",", ",");
    }
    noun_phrase();
    if (chance(0.2)) word(any(kAdverb), "RB");
    if (chance(0.25)) {
      word(any(kModal), "MD");
      word(any(kBaseVerb), "VB");
    } else {
      word(any(kPastVerb), "VBD");
      if (chance(0.3)) word(any(kParticiple), "VBN");
    }
    if (chance(0.15)) {
      word(any(kGerund), "VBG");  // "was rising", verbal
    } else if (chance(0.7)) {
      noun_phrase();
      if (chance(0.2)) {  // "the bank and the company": two phrases
        word("and", "CC");
        noun_phrase();
      }
    }
    const std::size_t pps = pick(3);
    for (std::size_t i = 0; i < pps; ++i) prepositional_phrase();
    word(".", ".");

    for (Token &t : sentence_.tokens) {
      if (chance(noise_)) t.pos = std::string(any(kAllTags));
    }
    sentence_.gold = PhraseSet(spans_);
    return std::move(sentence_);
  }

  double noise_ = 0.0;

 private:
  void close(std::size_t start) { spans_.push_back({start, sentence_.tokens.size() - 1}); }

  std::mt19937_64 rng_;
  Sentence sentence_;
  std::vector<Span> spans_;
};

}  // namespace

Corpus generate_corpus(const SyntheticOptions &options) {
  if (options.pos_noise < 0.0 || options.pos_noise > 1.0) {
    throw InvalidArgument("POS noise must lie in [0, 1]");
  }
  Builder builder(options.seed);
  builder.noise_ = options.pos_noise;
  Corpus corpus;
  corpus.sentences.reserve(options.sentences);
  for (std::size_t i = 0; i < options.sentences; ++i) {
    corpus.sentences.push_back(builder.sentence());
  }
  return corpus;
}

}  // namespace npchunk
