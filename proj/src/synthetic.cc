#include "depex/synthetic.h"

#include <algorithm>
#include <array>
#include <cstdio>
#include <string>
#include <string_view>

#include "depex/text_util.h"

namespace depex {

namespace {

struct Noun {
  std::string_view singular;
  std::string_view plural;
};

struct Verb {
  std::string_view lemma;
  std::string_view past;        // VBD
  std::string_view participle;  // VBN
  std::string_view third;       // VBZ
};

constexpr std::array<std::string_view, 12> kProperNouns = {
    "Neurology", "Parkinson", "Alzheimer", "Broca",   "Wernicke", "Boston",
    "China",     "Harvard",   "Medline",   "Cushing", "Penfield", "Geneva"};

constexpr std::array<Noun, 14> kNouns = {{
    {"patient", "patients"},   {"neuron", "neurons"},
    {"cortex", "cortices"},    {"lesion", "lesions"},
    {"student", "students"},   {"physician", "physicians"},
    {"syndrome", "syndromes"}, {"therapy", "therapies"},
    {"scan", "scans"},         {"symptom", "symptoms"},
    {"nerve", "nerves"},       {"trial", "trials"},
    {"study", "studies"},      {"disorder", "disorders"},
}};

constexpr std::array<Verb, 10> kVerbs = {{
    {"examine", "examined", "examined", "examines"},
    {"treat", "treated", "treated", "treats"},
    {"describe", "described", "described", "describes"},
    {"damage", "damaged", "damaged", "damages"},
    {"study", "studied", "studied", "studies"},
    {"report", "reported", "reported", "reports"},
    {"measure", "measured", "measured", "measures"},
    {"identify", "identified", "identified", "identifies"},
    {"stimulate", "stimulated", "stimulated", "stimulates"},
    {"review", "reviewed", "reviewed", "reviews"},
}};

constexpr std::array<std::string_view, 8> kAdjectives = {
    "chronic", "motor", "clinical", "severe", "cortical", "rare", "acute", "early"};

constexpr std::array<std::string_view, 4> kPrepositions = {"in", "with", "during", "after"};

// Accumulates tokens and edges; edges are kept sorted by dependent so the
// result round-trips through CoNLL-U unchanged.
class Builder {
 public:
  int add(std::string_view form, std::string_view lemma, std::string_view upos,
          std::string_view xpos) {
    const int index = static_cast<int>(s_.tokens.size()) + 1;
    s_.tokens.push_back({index, std::string(form), std::string(lemma),
                         std::string(upos), std::string(xpos)});
    return index;
  }

  // Same relation in both layers.
  void dep(int dependent, int head, std::string_view rel) {
    basic(dependent, head, rel);
    enhanced(dependent, head, rel);
  }
  void basic(int dependent, int head, std::string_view rel) {
    s_.basic_edges.push_back({head, dependent, std::string(rel)});
  }
  void enhanced(int dependent, int head, std::string_view rel) {
    s_.enhanced_edges.push_back({head, dependent, std::string(rel)});
  }

  Sentence finish() {
    auto by_target = [](const DepEdge &a, const DepEdge &b) {
      return a.target < b.target;
    };
    std::stable_sort(s_.basic_edges.begin(), s_.basic_edges.end(), by_target);
    std::stable_sort(s_.enhanced_edges.begin(), s_.enhanced_edges.end(), by_target);
    std::vector<std::string> forms;
    for (const Token &t : s_.tokens) forms.push_back(t.form);
    s_.text = join(forms, " ");
    return std::move(s_);
  }

 private:
  Sentence s_;
};

template <typename T, size_t N>
const T &pick(std::mt19937_64 &rng, const std::array<T, N> &pool) {
  return pool[std::uniform_int_distribution<size_t>(0, N - 1)(rng)];
}

bool coin(std::mt19937_64 &rng) { return (rng() & 1u) != 0; }

std::string capitalized(std::string_view s) {
  std::string out(s);
  if (!out.empty() && out[0] >= 'a' && out[0] <= 'z') out[0] -= 'a' - 'A';
  return out;
}

// Determiner + optional adjective + common noun; returns the noun index.
int noun_phrase(Builder &b, std::mt19937_64 &rng, bool plural, bool sentence_start) {
  const Noun &n = pick(rng, kNouns);
  int det = 0;
  if (!plural || coin(rng)) {
    std::string_view d = plural ? "the" : (coin(rng) ? "the" : "a");
    det = b.add(sentence_start ? capitalized(d) : std::string(d), d, "DET", "DT");
  }
  int adj = 0;
  if (coin(rng)) {
    std::string_view a = pick(rng, kAdjectives);
    adj = b.add(det == 0 && sentence_start ? capitalized(a) : std::string(a), a,
                "ADJ", "JJ");
  }
  std::string_view form = plural ? n.plural : n.singular;
  const bool cap = det == 0 && adj == 0 && sentence_start;
  const int head = b.add(cap ? capitalized(form) : std::string(form),
                         n.singular, "NOUN", plural ? "NNS" : "NN");
  if (det) b.dep(det, head, "det");
  if (adj) b.dep(adj, head, "amod");
  return head;
}

// One or two proper nouns; the last is the head, earlier ones compounds.
int proper_phrase(Builder &b, std::mt19937_64 &rng, bool allow_compound) {
  std::string_view name = pick(rng, kProperNouns);
  const int first = b.add(name, name, "PROPN", "NNP");
  if (!allow_compound || coin(rng)) return first;
  std::string_view second = pick(rng, kProperNouns);
  const int head = b.add(second, second, "PROPN", "NNP");
  b.dep(first, head, "compound");
  return head;
}

int period(Builder &b, int root) {
  const int p = b.add(".", ".", "PUNCT", ".");
  b.dep(p, root, "punct");
  return p;
}

Sentence active(std::mt19937_64 &rng) {
  Builder b;
  const int subj = coin(rng) ? proper_phrase(b, rng, true)
                             : noun_phrase(b, rng, coin(rng), true);
  const Verb &v = pick(rng, kVerbs);
  const int verb = b.add(v.past, v.lemma, "VERB", "VBD");
  const int obj = noun_phrase(b, rng, coin(rng), false);
  b.dep(verb, 0, "root");
  b.dep(subj, verb, "nsubj");
  b.dep(obj, verb, "obj");
  period(b, verb);
  return b.finish();
}

Sentence passive(std::mt19937_64 &rng) {
  Builder b;
  const bool plural = coin(rng);
  const int subj = noun_phrase(b, rng, plural, true);
  const int aux = b.add(plural ? "were" : "was", "be", "AUX", "VBD");
  const bool negated = coin(rng);
  const int neg = negated ? b.add("not", "not", "PART", "RB") : 0;
  const Verb &v = pick(rng, kVerbs);
  const int verb = b.add(v.participle, v.lemma, "VERB", "VBN");
  const int by = b.add("by", "by", "ADP", "IN");
  const int agent = proper_phrase(b, rng, true);
  b.dep(verb, 0, "root");
  b.dep(subj, verb, "nsubj:pass");
  b.dep(aux, verb, "aux:pass");
  if (neg) b.dep(neg, verb, "neg");
  b.dep(by, agent, "case");
  b.basic(agent, verb, "obl");
  b.enhanced(agent, verb, "obl:by");
  period(b, verb);
  return b.finish();
}

Sentence coordinated_objects(std::mt19937_64 &rng) {
  Builder b;
  const int subj = proper_phrase(b, rng, true);
  const Verb &v = pick(rng, kVerbs);
  const int verb = b.add(v.third, v.lemma, "VERB", "VBZ");
  const int obj = noun_phrase(b, rng, true, false);
  const bool use_or = (rng() % 4) == 0;
  const int cc = b.add(use_or ? "or" : "and", use_or ? "or" : "and", "CCONJ", "CC");
  const int conj = noun_phrase(b, rng, true, false);
  b.dep(verb, 0, "root");
  b.dep(subj, verb, "nsubj");
  b.dep(obj, verb, "obj");
  b.dep(cc, conj, "cc");
  b.basic(conj, obj, "conj");
  b.enhanced(conj, obj, use_or ? "conj:or" : "conj:and");
  b.enhanced(conj, verb, "obj");
  period(b, verb);
  return b.finish();
}

Sentence oblique(std::mt19937_64 &rng) {
  Builder b;
  const int subj = noun_phrase(b, rng, coin(rng), true);
  const Verb &v = pick(rng, kVerbs);
  const int verb = b.add(v.past, v.lemma, "VERB", "VBD");
  std::string_view prep = pick(rng, kPrepositions);
  const int c = b.add(prep, prep, "ADP", "IN");
  const int obl = noun_phrase(b, rng, coin(rng), false);
  b.dep(verb, 0, "root");
  b.dep(subj, verb, "nsubj");
  b.dep(c, obl, "case");
  b.basic(obl, verb, "obl");
  b.enhanced(obl, verb, "obl:" + std::string(prep));
  period(b, verb);
  return b.finish();
}

Sentence two_clauses(std::mt19937_64 &rng) {
  Builder b;
  const int subj = proper_phrase(b, rng, false);
  const Verb &v1 = pick(rng, kVerbs);
  const int verb1 = b.add(v1.past, v1.lemma, "VERB", "VBD");
  const int obj1 = noun_phrase(b, rng, coin(rng), false);
  const int cc = b.add("and", "and", "CCONJ", "CC");
  const Verb &v2 = pick(rng, kVerbs);
  const int verb2 = b.add(v2.past, v2.lemma, "VERB", "VBD");
  const int obj2 = noun_phrase(b, rng, coin(rng), false);
  b.dep(verb1, 0, "root");
  b.dep(subj, verb1, "nsubj");
  b.dep(obj1, verb1, "obj");
  b.dep(cc, verb2, "cc");
  b.basic(verb2, verb1, "conj");
  b.enhanced(verb2, verb1, "conj:and");
  b.enhanced(subj, verb2, "nsubj");
  b.dep(obj2, verb2, "obj");
  period(b, verb1);
  return b.finish();
}

Sentence copular(std::mt19937_64 &rng) {
  Builder b;
  const bool plural = coin(rng);
  const int subj = noun_phrase(b, rng, plural, true);
  const int cop = b.add(plural ? "are" : "is", "be", "AUX", plural ? "VBP" : "VBZ");
  std::string_view adj = pick(rng, kAdjectives);
  const int pred = b.add(adj, adj, "ADJ", "JJ");
  b.dep(pred, 0, "root");
  b.dep(subj, pred, "nsubj");
  b.dep(cop, pred, "cop");
  period(b, pred);
  return b.finish();
}

Sentence fragment(std::mt19937_64 &rng) {
  Builder b;
  const int head = noun_phrase(b, rng, coin(rng), true);
  const int c = b.add("of", "of", "ADP", "IN");
  const int nmod = proper_phrase(b, rng, false);
  b.dep(head, 0, "root");
  b.dep(c, nmod, "case");
  b.basic(nmod, head, "nmod");
  b.enhanced(nmod, head, "nmod:of");
  period(b, head);
  return b.finish();
}

}  // namespace

Sentence synthetic_sentence(std::mt19937_64 &rng) {
  // Weighted towards clauses with both arguments, like expository prose.
  static constexpr std::array<Sentence (*)(std::mt19937_64 &), 10> kShapes = {
      active,  active,      passive, coordinated_objects, oblique,
      oblique, two_clauses, copular, fragment,            active};
  return pick(rng, kShapes)(rng);
}

std::vector<Document> synthetic_corpus(size_t docs, size_t tokens_per_doc,
                                       uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Document> out(docs);
  for (size_t d = 0; d < docs; ++d) {
    char id[32];
    std::snprintf(id, sizeof(id), "synthetic-%04zu", d + 1);
    Document &doc = out[d];
    doc.id = id;
    doc.genre = Genre::kDomain;
    doc.length_class = LengthClass::kLong;
    size_t tokens = 0;
    while (tokens < tokens_per_doc) {
      doc.sentences.push_back(synthetic_sentence(rng));
      tokens += doc.sentences.back().tokens.size();
    }
  }
  return out;
}

}  // namespace depex
