#ifndef NPCHUNK_SYNTHETIC_HPP_
#define NPCHUNK_SYNTHETIC_HPP_

#include <cstdint>

#include "npchunk/corpus.hpp"

namespace npchunk {

// Small grammar of English-like sentences with gold base noun phrases:
// determiners, adjectives, compounds, possessives, proper names, prices and
// adjacent phrases ("$ 366.50 an ounce"), inside prepositional and verbal
// frames. A fraction of POS tags is replaced at random, so POS alone does not
// fix the bracketing.
struct SyntheticOptions {
  std::size_t sentences = 200;
  std::uint64_t seed = 1;
  double pos_noise = 0.05;
};

// Same options, same corpus, on every platform.
Corpus generate_corpus(const SyntheticOptions &options);

}  // namespace npchunk

#endif  // NPCHUNK_SYNTHETIC_HPP_
