#ifndef DEPEX_CASCADE_H_
#define DEPEX_CASCADE_H_

// Corpus-level kernels. Every kernel has a serial reference and an OpenMP
// version; both must return identical results for any `jobs` value.

#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "depex/corpus.h"
#include "depex/eval.h"
#include "depex/heuristic_ner.h"
#include "depex/heuristic_srl.h"

namespace depex {

struct CascadeConfig {
  PosFilter pos_filter = proper_noun_filter();
  SrlRuleConfig srl;
};

struct DocumentResult {
  std::string doc_id;
  std::vector<NounCandidate> nouns;
  std::unordered_map<std::string, size_t> noun_counts;
  std::vector<TripleRecord> triples;
  size_t basic_fallbacks = 0;
};

// Heuristic NER noun extraction plus SRL triple extraction over every
// sentence of every document.
std::vector<DocumentResult> run_cascade_serial(std::span<const Document> docs,
                                               const CascadeConfig &config);
std::vector<DocumentResult> run_cascade_parallel(std::span<const Document> docs,
                                                 const CascadeConfig &config,
                                                 int jobs);

struct NerDocInput {
  std::string doc_id;
  std::set<size_t> predicted;
  std::set<size_t> benchmark;
  size_t total_tokens = 0;
};

std::vector<ConfusionCounts> ner_confusion_serial(
    std::span<const NerDocInput> docs, NerMode mode);
std::vector<ConfusionCounts> ner_confusion_parallel(
    std::span<const NerDocInput> docs, NerMode mode, int jobs);

struct SrlDocInput {
  std::string doc_id;
  std::vector<SrlBenchTriple> bench;
  std::vector<TripleRecord> predicted;
};

std::vector<SrlReport> srl_scores_serial(std::span<const SrlDocInput> docs);
std::vector<SrlReport> srl_scores_parallel(std::span<const SrlDocInput> docs,
                                           int jobs);

// Worker threads used for `jobs` (0 = runtime default), capped at the number
// of available processors.
int effective_jobs(int jobs);

}  // namespace depex

#endif  // DEPEX_CASCADE_H_
