#ifndef DEPEX_EVAL_H_
#define DEPEX_EVAL_H_

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "depex/heuristic_srl.h"

namespace depex {

// Symbolic extraction only looks at nouns, so it has no true negatives.
enum class NerMode { kSymbolic, kDataDriven };

std::string_view to_string(NerMode mode);
NerMode parse_ner_mode(std::string_view s);

struct ConfusionCounts {
  size_t tp = 0;
  size_t tn = 0;
  size_t fp = 0;
  size_t fn = 0;
  bool tn_applicable = true;

  bool operator==(const ConfusionCounts &) const = default;
  size_t total() const { return tp + tn + fp + fn; }
  // Counts are additive; TN stays applicable only if both sides had it.
  ConfusionCounts &operator+=(const ConfusionCounts &o);
};

// Ratios with the zero-denominator convention: every undefined ratio is 0 and
// accuracy is absent when TN does not apply.
struct MetricSet {
  std::optional<double> accuracy;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};
using NerReport = MetricSet;

// Positions are 0-based token offsets in the document. Throws
// ValidationError if a position is >= total_tokens.
ConfusionCounts ner_confusion(const std::set<size_t> &predicted,
                              const std::set<size_t> &benchmark,
                              size_t total_tokens, NerMode mode);

MetricSet ner_metrics(const ConfusionCounts &counts);

double f1_score(double precision, double recall);

// ---------------------------------------------------------------------------
// SRL

struct SrlBenchTriple {
  std::string doc_id;
  size_t sentence_index = 0;
  std::string subject_keyword;  // empty: no subject annotated
  std::string predicate_keyword;
  std::optional<std::string> object_keyword;
};

struct SlotMatch {
  bool expected = false;   // benchmark has a keyword for the slot
  bool extracted = false;  // extraction filled the slot
  bool matched = false;    // extracted slot contains the keyword

  bool operator==(const SlotMatch &) const = default;
};

struct SlotMatches {
  SlotMatch subject;
  SlotMatch predicate;
  SlotMatch object;

  bool operator==(const SlotMatches &) const = default;
};

// Case-insensitive substring test on whitespace-normalised strings. A keyword
// may list alternatives separated by '/'; any one matching is enough. An
// empty extracted string never matches.
bool keyword_match(std::string_view extracted, std::string_view keyword);

SlotMatches srl_match(const SrlTriple &extracted, const SrlBenchTriple &bench);
// Extraction with no benchmark triple to compare against.
SlotMatches unpaired_extraction(const SrlTriple &extracted);
// Benchmark triple the system produced nothing for.
SlotMatches unextracted_benchmark(const SrlBenchTriple &bench);

enum class SlotOutcome { kNone, kTruePositive, kTrueNegative, kFalsePositive, kFalseNegative };

struct SampleOutcome {
  SlotOutcome subject = SlotOutcome::kNone;
  SlotOutcome predicate = SlotOutcome::kNone;
  SlotOutcome object = SlotOutcome::kNone;
};

// Per-slot TP/FP/FN, then the predicate-dependent TN rule: a false-positive
// predicate turns the sample's subject and object into TN; otherwise a
// false-positive argument turns an unextracted predicate into TN.
SampleOutcome classify(const SlotMatches &sample);

struct SrlConfusion {
  ConfusionCounts subject;
  ConfusionCounts predicate;
  ConfusionCounts object;

  ConfusionCounts arguments() const;
  ConfusionCounts overall() const;
};

SrlConfusion srl_confusion(std::span<const SlotMatches> samples);

struct SrlReport {
  double rigid_accuracy = 0.0;
  double predicate_accuracy = 0.0;
  double argument_accuracy = 0.0;
  size_t bench_triples = 0;
  size_t correct_triples = 0;
  size_t bench_predicates = 0;
  size_t correct_predicates = 0;
  size_t bench_arguments = 0;
  size_t correct_arguments = 0;
  SrlConfusion confusion;
  MetricSet predicate_metrics;
  MetricSet argument_metrics;
  MetricSet overall_metrics;
};

// Throws ValidationError when no sample carries a benchmark triple.
SrlReport srl_scores(std::span<const SlotMatches> samples);

// Pairs benchmark triples with extractions of the same sentence. Each
// benchmark triple takes the unused extraction that matches best (predicate
// first, then subject, then object; earliest on ties). Left-over extractions
// in benchmarked sentences become unpaired samples; sentences without a
// benchmark are ignored.
std::vector<SlotMatches> pair_samples(std::span<const SrlBenchTriple> bench,
                                      std::span<const TripleRecord> predicted);

// ---------------------------------------------------------------------------
// Files

// TSV `doc_id<TAB>token_position<TAB>token` -> doc_id -> positions.
std::map<std::string, std::set<size_t>> read_ner_positions(std::istream &in);

// JSON Lines {doc_id, sentence_index, subject_keyword, predicate_keyword,
// object_keyword}.
std::vector<SrlBenchTriple> read_srl_bench(std::istream &in);

}  // namespace depex

#endif  // DEPEX_EVAL_H_
