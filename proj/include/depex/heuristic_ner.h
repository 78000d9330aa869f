#ifndef DEPEX_HEURISTIC_NER_H_
#define DEPEX_HEURISTIC_NER_H_

#include <cstddef>
#include <istream>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "depex/corpus.h"

namespace depex {

using PosFilter = std::set<std::string, std::less<>>;

// {"NNP"}: proper nouns only.
PosFilter proper_noun_filter();
// {"NN", "NNS", "NNP", "NNPS"}.
PosFilter all_nouns_filter();

struct NounCandidate {
  std::string form;
  std::string lemma;
  size_t sentence_index = 0;
  int token_index = 0;

  bool operator==(const NounCandidate &) const = default;
};

// Lowercase lemma -> hypernym label.
class Taxonomy {
 public:
  // Two tab-separated columns `lemma<TAB>label`; '#' lines and blank lines are
  // skipped. Keys are lowercased on load; the first entry for a key wins.
  static Taxonomy from_tsv(std::istream &in);
  static Taxonomy load(const std::string &path);

  // Returns false if the key was already present.
  bool add(std::string_view lemma, std::string_view label);
  std::optional<std::string> lookup(std::string_view lemma) const;
  size_t size() const { return entries_.size(); }

 private:
  std::unordered_map<std::string, std::string> entries_;
};

struct RankedNoun {
  std::string lemma;
  size_t count = 0;
  std::optional<std::string> hypernym;

  bool operator==(const RankedNoun &) const = default;
};

// Tokens whose xpos is in `filter`, in token order. Throws ValidationError on
// an empty filter.
std::vector<NounCandidate> extract_nouns(const Sentence &sentence,
                                         const PosFilter &filter,
                                         size_t sentence_index = 0);

// Frequency key: lowercase lemma, falling back to the lowercase form when the
// parser supplied no lemma.
std::string noun_key(const NounCandidate &noun);

// Top-k nouns by count (descending), ties broken by lemma ascending. When
// `taxonomy` is given each entry carries its hypernym.
std::vector<RankedNoun> rank_nouns(const Document &doc, const PosFilter &filter,
                                   size_t k, const Taxonomy *taxonomy = nullptr);

// Same ranking over precomputed counts; shared by the parallel cascade.
std::vector<RankedNoun> top_k(
    const std::unordered_map<std::string, size_t> &counts, size_t k,
    const Taxonomy *taxonomy = nullptr);

std::optional<std::string> map_hypernym(std::string_view lemma,
                                        const Taxonomy &taxonomy);

}  // namespace depex

#endif  // DEPEX_HEURISTIC_NER_H_
