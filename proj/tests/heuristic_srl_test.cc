#include <sstream>
#include <string>

#include "depex/error.h"
#include "depex/heuristic_srl.h"
#include "doctest.h"
#include "support/srl_graphs.h"

using namespace depex;
using depex::testing::graph;
using depex::testing::Spo;
using depex::testing::spo_of;

TEST_SUITE("heuristic_srl") {

TEST_CASE("hand-traced graphs") {
  for (const auto &c : testing::srl_cases()) {
    CAPTURE(c.name);
    const auto triples = extract_triples(c.sentence);
    REQUIRE(triples.size() == 1);
    CHECK(spo_of(triples[0]) == c.expected);
    CHECK(triples[0].trace == c.trace);
  }
}

TEST_CASE("disabling one rule changes only what that rule does") {
  const auto result = testing::run_mutation_checks();
  for (const std::string &m : result.messages) MESSAGE(m);
  CHECK(result.checks == 7 * kAllSrlRules.size());
  CHECK(result.failures == 0);
}

TEST_CASE("slot indices are reported") {
  const auto cases = testing::srl_cases();
  const auto t = extract_triples(cases[5].sentence).at(0);  // compound
  CHECK(t.subject_indices == std::vector<int>{1, 2});
  CHECK(t.predicate_index == 3);
  CHECK(t.object_indices == std::vector<int>{4, 5});
  CHECK_FALSE(t.degenerate);
}

TEST_CASE("copular root keeps only the subject") {
  const Sentence s = graph({{"The", "the", "DET", "DT", 2, "det"},
                            {"cortex", "cortex", "NOUN", "NN", 4, "nsubj"},
                            {"is", "be", "AUX", "VBZ", 4, "cop"},
                            {"thin", "thin", "ADJ", "JJ", 0, "root"},
                            {".", ".", "PUNCT", ".", 4, "punct"}});
  const auto t = extract_triples(s);
  REQUIRE(t.size() == 1);
  CHECK(spo_of(t[0]) == Spo{"cortex", "thin", std::nullopt});
  CHECK(t[0].trace == std::vector<std::string>{"copula", "subject", "index_resolution"});
}

TEST_CASE("every verb governing an argument yields a triple, root first") {
  const Sentence s = graph({{"Penfield", "Penfield", "PROPN", "NNP", 2, "nsubj"},
                            {"mapped", "map", "VERB", "VBD", 0, "root"},
                            {"cortex", "cortex", "NOUN", "NN", 2, "obj"},
                            {"and", "and", "CCONJ", "CC", 5, "cc"},
                            {"stimulated", "stimulate", "VERB", "VBD", 2, "conj:and"},
                            {"neurons", "neuron", "NOUN", "NNS", 5, "obj"}},
                           {{5, 1, "nsubj"}});
  const auto t = extract_triples(s);
  REQUIRE(t.size() == 2);
  CHECK(spo_of(t[0]) == Spo{"Penfield", "mapped", "cortex"});
  CHECK(spo_of(t[1]) == Spo{"Penfield", "stimulated", "neurons"});
}

TEST_CASE("no root or no arguments yields nothing") {
  Sentence s = graph({{"Hello", "hello", "INTJ", "UH", 0, "root"}});
  CHECK(extract_triples(s).empty());
  s.enhanced_edges.clear();
  s.basic_edges.clear();
  CHECK(extract_triples(s).empty());
  const Sentence fragment = graph({{"Clinical", "clinical", "ADJ", "JJ", 2, "amod"},
                                   {"Neurology", "Neurology", "PROPN", "NNP", 0, "root"}});
  CHECK(extract_triples(fragment).empty());
}

TEST_CASE("basic edges are used when enhanced edges are missing") {
  Sentence s = graph({{"Wernicke", "Wernicke", "PROPN", "NNP", 2, "nsubj"},
                      {"studied", "study", "VERB", "VBD", 0, "root"},
                      {"comprehension", "comprehension", "NOUN", "NN", 2, "obj"},
                      {"or", "or", "CCONJ", "CC", 5, "cc"},
                      {"fluency", "fluency", "NOUN", "NN", 3, "conj"}});
  s.enhanced_edges.clear();
  SrlDiagnostics diag;
  const auto t = extract_triples(s, {}, &diag);
  CHECK(diag.basic_fallbacks == 1);
  REQUIRE(t.size() == 1);
  // Plain "conj" takes its literal from the cc child.
  CHECK(spo_of(t[0]) == Spo{"Wernicke", "studied", "comprehension or fluency"});
}

TEST_CASE("conj:or renders with or") {
  const Sentence s = graph({{"Broca", "Broca", "PROPN", "NNP", 2, "nsubj"},
                            {"treated", "treat", "VERB", "VBD", 0, "root"},
                            {"aphasia", "aphasia", "NOUN", "NN", 2, "obj"},
                            {"or", "or", "CCONJ", "CC", 5, "cc"},
                            {"apraxia", "apraxia", "NOUN", "NN", 3, "conj:or"}});
  CHECK(extract_triples(s).at(0).object == "aphasia or apraxia");
}

TEST_CASE("object relation family excludes iobj") {
  const Sentence s = graph({{"Broca", "Broca", "PROPN", "NNP", 2, "nsubj"},
                            {"gave", "give", "VERB", "VBD", 0, "root"},
                            {"students", "student", "NOUN", "NNS", 2, "iobj"},
                            {"lectures", "lecture", "NOUN", "NNS", 2, "obj"}});
  CHECK(extract_triples(s).at(0).object == "lectures");
}

TEST_CASE("rule names and config validation") {
  for (SrlRule r : kAllSrlRules) CHECK(parse_rule_name(rule_name(r)) == r);
  CHECK(parse_rule_name("bogus") == std::nullopt);
  SrlRuleConfig config;
  CHECK_NOTHROW(config.validate());
  config.object_relation.clear();
  CHECK_THROWS_AS(config.validate(), ValidationError);
}

TEST_CASE("triple records round trip through JSON Lines") {
  const auto cases = testing::srl_cases();
  std::vector<TripleRecord> records;
  for (size_t i = 0; i < cases.size(); ++i) {
    for (const SrlTriple &t : extract_triples(cases[i].sentence)) {
      records.push_back({"doc", i, t});
    }
  }
  std::ostringstream out;
  write_triple_records(out, records);
  std::istringstream in(out.str());
  const auto back = read_triple_records(in);
  REQUIRE(back.size() == records.size());
  for (size_t i = 0; i < back.size(); ++i) {
    CHECK(back[i].doc_id == "doc");
    CHECK(back[i].sentence_index == records[i].sentence_index);
    CHECK(spo_of(back[i].triple) == spo_of(records[i].triple));
    CHECK(back[i].triple.trace == records[i].triple.trace);
  }
  CHECK(triple_record_to_json(records[0]) ==
        R"({"doc_id":"doc","sentence_index":0,"subject":"neurologist","predicate":"examined","object":"patient","trace":["subject","object","index_resolution"]})");

  std::istringstream bad("{\"doc_id\":\"d\"}\n");
  CHECK_THROWS_AS(read_triple_records(bad), ParseError);
}

}  // TEST_SUITE
