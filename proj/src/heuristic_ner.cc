#include "depex/heuristic_ner.h"

#include <algorithm>
#include <fstream>

#include "depex/error.h"
#include "depex/text_util.h"

namespace depex {

PosFilter proper_noun_filter() { return {"NNP"}; }

PosFilter all_nouns_filter() { return {"NN", "NNS", "NNP", "NNPS"}; }

Taxonomy Taxonomy::from_tsv(std::istream &in) {
  Taxonomy tax;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || line.front() == '#') continue;
    std::vector<std::string> cols = split(line, '\t');
    if (cols.size() != 2 || trim(cols[0]).empty() || trim(cols[1]).empty()) {
      throw ParseError(line_no, "taxonomy rows are lemma<TAB>hypernym");
    }
    tax.add(trim(cols[0]), trim(cols[1]));
  }
  return tax;
}

Taxonomy Taxonomy::load(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open taxonomy " + path);
  return from_tsv(in);
}

bool Taxonomy::add(std::string_view lemma, std::string_view label) {
  if (lemma.empty() || label.empty()) {
    throw ValidationError("taxonomy keys and labels must be non-empty");
  }
  return entries_.emplace(ascii_lower(lemma), std::string(label)).second;
}

std::optional<std::string> Taxonomy::lookup(std::string_view lemma) const {
  if (lemma.empty()) return std::nullopt;
  auto it = entries_.find(ascii_lower(lemma));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::vector<NounCandidate> extract_nouns(const Sentence &sentence,
                                         const PosFilter &filter,
                                         size_t sentence_index) {
  if (filter.empty()) throw ValidationError("POS filter is empty");
  std::vector<NounCandidate> out;
  for (const Token &t : sentence.tokens) {
    if (filter.contains(t.xpos)) {
      out.push_back({t.form, t.lemma, sentence_index, t.index});
    }
  }
  return out;
}

std::string noun_key(const NounCandidate &noun) {
  return ascii_lower(noun.lemma.empty() ? noun.form : noun.lemma);
}

std::vector<RankedNoun> top_k(
    const std::unordered_map<std::string, size_t> &counts, size_t k,
    const Taxonomy *taxonomy) {
  if (k == 0) throw ValidationError("k must be at least 1");
  std::vector<RankedNoun> ranked;
  ranked.reserve(counts.size());
  for (const auto &[lemma, count] : counts) ranked.push_back({lemma, count, {}});
  auto order = [](const RankedNoun &a, const RankedNoun &b) {
    if (a.count != b.count) return a.count > b.count;
    return a.lemma < b.lemma;
  };
  const size_t keep = std::min(k, ranked.size());
  std::partial_sort(ranked.begin(), ranked.begin() + keep, ranked.end(), order);
  ranked.resize(keep);
  if (taxonomy) {
    for (RankedNoun &r : ranked) r.hypernym = map_hypernym(r.lemma, *taxonomy);
  }
  return ranked;
}

std::vector<RankedNoun> rank_nouns(const Document &doc, const PosFilter &filter,
                                   size_t k, const Taxonomy *taxonomy) {
  if (k == 0) throw ValidationError("k must be at least 1");
  std::unordered_map<std::string, size_t> counts;
  for (size_t i = 0; i < doc.sentences.size(); ++i) {
    for (const NounCandidate &n : extract_nouns(doc.sentences[i], filter, i)) {
      ++counts[noun_key(n)];
    }
  }
  return top_k(counts, k, taxonomy);
}

std::optional<std::string> map_hypernym(std::string_view lemma,
                                        const Taxonomy &taxonomy) {
  return taxonomy.lookup(lemma);
}

}  // namespace depex
