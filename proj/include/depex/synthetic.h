#ifndef DEPEX_SYNTHETIC_H_
#define DEPEX_SYNTHETIC_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "depex/corpus.h"

namespace depex {

// Generator of pre-parsed English-like sentences with basic and enhanced UD
// edges, for benchmarking and property tests. Sentences cycle through active,
// passive/negated, compound, coordinated, oblique, two-clause, copular and
// verbless shapes.
Sentence synthetic_sentence(std::mt19937_64 &rng);

// `docs` documents of at least `tokens_per_doc` tokens each. Same seed, same
// corpus.
std::vector<Document> synthetic_corpus(size_t docs, size_t tokens_per_doc,
                                       uint64_t seed);

}  // namespace depex

#endif  // DEPEX_SYNTHETIC_H_
