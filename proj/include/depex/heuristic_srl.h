#ifndef DEPEX_HEURISTIC_SRL_H_
#define DEPEX_HEURISTIC_SRL_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "depex/corpus.h"

namespace depex {

// Rules of the subject/predicate/object cascade. Each can be switched off
// individually, which is how the mutation tests check that a rule does what
// its trace entry claims.
enum class SrlRule : uint8_t {
  kSubject,          // edge label contains "subj" -> subject
  kPassive,          // "subj:pass" present -> predicate prefixed "be"
  kNegation,         // "neg" present -> predicate prefixed "not"
  kObject,           // "obj" edge -> object
  kOblique,          // no object yet, "obl" edge -> object
  kCompound,         // compound edges merge into subject/object
  kConjunction,      // conjuncts joined with "and"/"or"
  kIndexResolution,  // slot indices rendered as token forms
};

inline constexpr std::array<SrlRule, 8> kAllSrlRules = {
    SrlRule::kSubject,  SrlRule::kPassive,     SrlRule::kNegation,
    SrlRule::kObject,   SrlRule::kOblique,     SrlRule::kCompound,
    SrlRule::kConjunction, SrlRule::kIndexResolution};

std::string_view rule_name(SrlRule rule);
std::optional<SrlRule> parse_rule_name(std::string_view name);

struct SrlRuleConfig {
  std::string subject_relation_substring = "subj";
  std::string object_relation = "obj";
  std::string oblique_relation = "obl";
  std::string passive_relation = "subj:pass";
  std::string negation_relation = "neg";
  std::string compound_relation = "compound";
  std::set<std::string, std::less<>> conjunction_relations = {"conj:and",
                                                              "conj:or", "cc"};
  std::set<SrlRule> disabled;

  bool enabled(SrlRule rule) const { return !disabled.contains(rule); }
  // Throws ValidationError if any relation setting is empty.
  void validate() const;
};

struct SrlTriple {
  std::string subject;  // empty when no subject was found
  std::string predicate;
  std::optional<std::string> object;
  std::vector<int> subject_indices;
  int predicate_index = 0;
  std::vector<int> object_indices;
  std::vector<std::string> trace;
  // Set when neither argument could be filled (frame decoding only).
  bool degenerate = false;

  bool operator==(const SrlTriple &) const = default;
};

struct SrlDiagnostics {
  // Sentences that had no enhanced edges and were read from basic edges.
  size_t basic_fallbacks = 0;
};

// One triple per predicate head: the root first, then every other verb that
// governs a subject or object edge, in token order. Heads with neither a
// subject nor an object produce nothing. A sentence without a root edge
// yields an empty list.
std::vector<SrlTriple> extract_triples(const Sentence &sentence,
                                       const SrlRuleConfig &config = {},
                                       SrlDiagnostics *diagnostics = nullptr);

// Triple output files: JSON Lines with
// {doc_id, sentence_index, subject, predicate, object, trace}.
struct TripleRecord {
  std::string doc_id;
  size_t sentence_index = 0;
  SrlTriple triple;
};

std::string triple_record_to_json(const TripleRecord &record);
// Throws ParseError on malformed lines (line numbers are 1-based).
std::vector<TripleRecord> read_triple_records(std::istream &in);
void write_triple_records(std::ostream &out,
                          const std::vector<TripleRecord> &records);

}  // namespace depex

#endif  // DEPEX_HEURISTIC_SRL_H_
