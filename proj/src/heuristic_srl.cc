#include "depex/heuristic_srl.h"

#include <algorithm>

#include "depex/error.h"
#include "depex/text_util.h"

namespace depex {

std::string_view rule_name(SrlRule rule) {
  switch (rule) {
    case SrlRule::kSubject: return "subject";
    case SrlRule::kPassive: return "passive";
    case SrlRule::kNegation: return "negation";
    case SrlRule::kObject: return "object";
    case SrlRule::kOblique: return "oblique";
    case SrlRule::kCompound: return "compound";
    case SrlRule::kConjunction: return "conjunction";
    case SrlRule::kIndexResolution: return "index_resolution";
  }
  return "unknown";
}

std::optional<SrlRule> parse_rule_name(std::string_view name) {
  for (SrlRule r : kAllSrlRules) {
    if (rule_name(r) == name) return r;
  }
  return std::nullopt;
}

void SrlRuleConfig::validate() const {
  if (subject_relation_substring.empty() || object_relation.empty() ||
      oblique_relation.empty() || passive_relation.empty() ||
      negation_relation.empty() || compound_relation.empty() ||
      conjunction_relations.empty()) {
    throw ValidationError("SRL rule relations must be non-empty");
  }
  for (const std::string &r : conjunction_relations) {
    if (r.empty()) throw ValidationError("empty conjunction relation");
  }
}

namespace {

bool contains(std::string_view haystack, std::string_view needle) {
  return haystack.find(needle) != std::string_view::npos;
}

// "obl" matches "obl" and subtypes such as "obl:to", but not "nobl".
bool in_family(std::string_view relation, std::string_view family) {
  return relation == family ||
         (starts_with(relation, family) && relation.size() > family.size() &&
          relation[family.size()] == ':');
}

bool is_verb(const Token &t) {
  if (t.upos.empty() && t.xpos.empty()) return true;
  return t.upos == "VERB" || starts_with(t.xpos, "VB");
}

// A run of tokens rendered as one conjunct, with the literal that joins it to
// the previous conjunct ("" for the first).
struct Group {
  std::vector<int> indices;
  std::string joiner;
};

class Cascade {
 public:
  Cascade(const Sentence &sentence, const std::vector<DepEdge> &edges,
          const SrlRuleConfig &config)
      : sentence_(sentence), edges_(edges), config_(config),
        out_(sentence.tokens.size() + 1) {
    for (const DepEdge &e : edges_) {
      if (e.source >= 0 && static_cast<size_t>(e.source) < out_.size()) {
        out_[e.source].push_back(&e);
      }
    }
    // Token order tie-break: scan dependents left to right.
    for (auto &list : out_) {
      std::stable_sort(list.begin(), list.end(),
                       [](const DepEdge *a, const DepEdge *b) {
                         return a->target < b->target;
                       });
    }
  }

  std::vector<SrlTriple> run() {
    std::vector<SrlTriple> triples;
    int root = find_root();
    if (root == 0) return triples;

    std::vector<int> heads = {root};
    for (const Token &t : sentence_.tokens) {
      if (t.index == root || !is_verb(t)) continue;
      for (const DepEdge *e : out_[t.index]) {
        if (is_subject(*e) || in_family(e->relation, config_.object_relation)) {
          heads.push_back(t.index);
          break;
        }
      }
    }
    for (int head : heads) {
      if (auto triple = triple_for(head)) triples.push_back(std::move(*triple));
    }
    return triples;
  }

 private:
  int find_root() const {
    for (const DepEdge &e : edges_) {
      if (e.source == 0 && ascii_lower(e.relation) == "root") return e.target;
    }
    return 0;
  }

  bool is_subject(const DepEdge &e) const {
    return contains(e.relation, config_.subject_relation_substring);
  }

  const DepEdge *first_dependent(int head, auto &&pred) const {
    for (const DepEdge *e : out_[head]) {
      if (pred(*e)) return e;
    }
    return nullptr;
  }

  std::string_view form(int index) const {
    const Token *t = sentence_.token_at(index);
    return t ? std::string_view(t->form) : std::string_view();
  }

  std::optional<SrlTriple> triple_for(int head) {
    const Token *head_token = sentence_.token_at(head);
    if (head_token == nullptr) return std::nullopt;
    const bool full_cascade = is_verb(*head_token);

    int subject = 0;
    int object = 0;
    bool passive = false;
    bool negated = false;
    bool object_from_obl = false;

    if (config_.enabled(SrlRule::kSubject)) {
      if (const DepEdge *e = first_dependent(
              head, [&](const DepEdge &d) { return is_subject(d); })) {
        subject = e->target;
      }
    }
    if (full_cascade) {
      if (config_.enabled(SrlRule::kPassive)) {
        passive = first_dependent(head, [&](const DepEdge &d) {
                    return contains(d.relation, config_.passive_relation);
                  }) != nullptr;
      }
      if (config_.enabled(SrlRule::kNegation)) {
        negated = first_dependent(head, [&](const DepEdge &d) {
                    return contains(d.relation, config_.negation_relation);
                  }) != nullptr;
      }
      if (config_.enabled(SrlRule::kObject)) {
        if (const DepEdge *e = first_dependent(head, [&](const DepEdge &d) {
              return in_family(d.relation, config_.object_relation);
            })) {
          object = e->target;
        }
      }
      if (object == 0 && config_.enabled(SrlRule::kOblique)) {
        if (const DepEdge *e = first_dependent(head, [&](const DepEdge &d) {
              return in_family(d.relation, config_.oblique_relation);
            })) {
          object = e->target;
          object_from_obl = true;
        }
      }
    }
    if (subject == 0 && object == 0) return std::nullopt;

    bool conjoined = false;
    bool compounded = false;
    std::vector<Group> subject_groups = expand(subject, &conjoined, &compounded);
    std::vector<Group> object_groups = expand(object, &conjoined, &compounded);

    SrlTriple triple;
    triple.predicate_index = head;
    triple.predicate = std::string(form(head));
    if (passive) triple.predicate = "be " + triple.predicate;
    if (negated) triple.predicate = "not " + triple.predicate;

    const bool resolve = config_.enabled(SrlRule::kIndexResolution);
    triple.subject = render(subject_groups, resolve);
    triple.subject_indices = flatten(subject_groups);
    if (!object_groups.empty()) {
      triple.object = render(object_groups, resolve);
      triple.object_indices = flatten(object_groups);
    }

    if (!full_cascade) triple.trace.emplace_back("copula");
    if (subject != 0) triple.trace.emplace_back(rule_name(SrlRule::kSubject));
    if (passive) triple.trace.emplace_back(rule_name(SrlRule::kPassive));
    if (negated) triple.trace.emplace_back(rule_name(SrlRule::kNegation));
    if (object != 0) {
      triple.trace.emplace_back(
          rule_name(object_from_obl ? SrlRule::kOblique : SrlRule::kObject));
    }
    if (compounded) triple.trace.emplace_back(rule_name(SrlRule::kCompound));
    if (conjoined) triple.trace.emplace_back(rule_name(SrlRule::kConjunction));
    if (resolve) triple.trace.emplace_back(rule_name(SrlRule::kIndexResolution));
    return triple;
  }

  // Conjunct literal for the edge `head -> conjunct`, or "" if the edge does
  // not coordinate.
  std::string conjunct_literal(const DepEdge &e) const {
    const bool use_cc = config_.conjunction_relations.contains("cc");
    auto literal_from_cc = [&]() -> std::string {
      if (!use_cc) return {};
      for (const DepEdge *c : out_[e.target]) {
        if (c->relation != "cc") continue;
        std::string word = ascii_lower(form(c->target));
        if (word == "and" || word == "or") return word;
      }
      return {};
    };
    if (config_.conjunction_relations.contains(e.relation) &&
        starts_with(e.relation, "conj")) {
      if (e.relation == "conj:and") return "and";
      if (e.relation == "conj:or") return "or";
      std::string word = literal_from_cc();
      return word.empty() ? "and" : word;
    }
    // Basic dependencies carry a bare "conj"; the cc child names the literal.
    if (in_family(e.relation, "conj")) return literal_from_cc();
    return {};
  }

  std::vector<Group> expand(int slot, bool *conjoined, bool *compounded) const {
    std::vector<Group> groups;
    if (slot == 0) return groups;
    groups.push_back({{slot}, ""});
    if (config_.enabled(SrlRule::kConjunction)) {
      for (const DepEdge *e : out_[slot]) {
        std::string literal = conjunct_literal(*e);
        if (literal.empty()) continue;
        groups.push_back({{e->target}, literal});
        *conjoined = true;
      }
    }
    if (config_.enabled(SrlRule::kCompound)) {
      for (Group &g : groups) {
        if (merge_compounds(&g.indices)) *compounded = true;
      }
    }
    return groups;
  }

  // Pulls in both ends of every compound edge touching the group until
  // nothing changes. Returns true if the group grew.
  bool merge_compounds(std::vector<int> *indices) const {
    bool grew = false;
    bool changed = true;
    auto has = [&](int i) {
      return std::find(indices->begin(), indices->end(), i) != indices->end();
    };
    while (changed) {
      changed = false;
      for (const DepEdge &e : edges_) {
        if (!in_family(e.relation, config_.compound_relation)) continue;
        if (e.source == 0) continue;
        const bool s = has(e.source), t = has(e.target);
        if (s == t) continue;
        indices->push_back(s ? e.target : e.source);
        changed = grew = true;
      }
    }
    std::sort(indices->begin(), indices->end());
    return grew;
  }

  std::string render(const std::vector<Group> &groups, bool resolve) const {
    std::string out;
    for (const Group &g : groups) {
      if (!g.joiner.empty()) out.append(" ").append(g.joiner).append(" ");
      for (size_t i = 0; i < g.indices.size(); ++i) {
        if (i > 0) out.push_back(' ');
        if (resolve) {
          out.append(form(g.indices[i]));
        } else {
          out.append(std::to_string(g.indices[i]));
        }
      }
    }
    return out;
  }

  static std::vector<int> flatten(const std::vector<Group> &groups) {
    std::vector<int> all;
    for (const Group &g : groups) all.insert(all.end(), g.indices.begin(), g.indices.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all;
  }

  const Sentence &sentence_;
  const std::vector<DepEdge> &edges_;
  const SrlRuleConfig &config_;
  std::vector<std::vector<const DepEdge *>> out_;
};

}  // namespace

std::vector<SrlTriple> extract_triples(const Sentence &sentence,
                                       const SrlRuleConfig &config,
                                       SrlDiagnostics *diagnostics) {
  const bool fallback = sentence.enhanced_edges.empty();
  if (fallback && diagnostics) ++diagnostics->basic_fallbacks;
  const std::vector<DepEdge> &edges =
      fallback ? sentence.basic_edges : sentence.enhanced_edges;
  return Cascade(sentence, edges, config).run();
}

}  // namespace depex
