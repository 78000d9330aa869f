#include "depex/eval.h"

#include <algorithm>
#include <tuple>

#include "depex/error.h"
#include "depex/text_util.h"

namespace depex {

std::string_view to_string(NerMode mode) {
  return mode == NerMode::kSymbolic ? "symbolic" : "data_driven";
}

NerMode parse_ner_mode(std::string_view s) {
  if (s == "symbolic") return NerMode::kSymbolic;
  if (s == "data_driven" || s == "data-driven") return NerMode::kDataDriven;
  throw ValidationError("mode must be symbolic or data_driven, got '" +
                        std::string(s) + "'");
}

ConfusionCounts &ConfusionCounts::operator+=(const ConfusionCounts &o) {
  tp += o.tp;
  tn += o.tn;
  fp += o.fp;
  fn += o.fn;
  tn_applicable = tn_applicable && o.tn_applicable;
  if (!tn_applicable) tn = 0;
  return *this;
}

ConfusionCounts ner_confusion(const std::set<size_t> &predicted,
                              const std::set<size_t> &benchmark,
                              size_t total_tokens, NerMode mode) {
  auto check = [total_tokens](const std::set<size_t> &s, const char *which) {
    if (!s.empty() && *s.rbegin() >= total_tokens) {
      throw ValidationError(std::string(which) + " position " +
                            std::to_string(*s.rbegin()) + " is outside a " +
                            std::to_string(total_tokens) + "-token document");
    }
  };
  check(predicted, "predicted");
  check(benchmark, "benchmark");

  ConfusionCounts c;
  // Both sets are sorted; one merge pass gives all three counts.
  auto p = predicted.begin();
  auto b = benchmark.begin();
  while (p != predicted.end() && b != benchmark.end()) {
    if (*p == *b) {
      ++c.tp;
      ++p;
      ++b;
    } else if (*p < *b) {
      ++c.fp;
      ++p;
    } else {
      ++c.fn;
      ++b;
    }
  }
  c.fp += static_cast<size_t>(std::distance(p, predicted.end()));
  c.fn += static_cast<size_t>(std::distance(b, benchmark.end()));
  if (mode == NerMode::kDataDriven) {
    c.tn = total_tokens - c.tp - c.fp - c.fn;
    c.tn_applicable = true;
  } else {
    c.tn = 0;
    c.tn_applicable = false;
  }
  return c;
}

double f1_score(double precision, double recall) {
  const double denom = precision + recall;
  return denom > 0.0 ? 2.0 * precision * recall / denom : 0.0;
}

MetricSet ner_metrics(const ConfusionCounts &c) {
  auto ratio = [](size_t num, size_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
  };
  MetricSet m;
  m.precision = ratio(c.tp, c.tp + c.fp);
  m.recall = ratio(c.tp, c.tp + c.fn);
  m.f1 = f1_score(m.precision, m.recall);
  if (c.tn_applicable) m.accuracy = ratio(c.tp + c.tn, c.total());
  return m;
}

// ---------------------------------------------------------------------------
// SRL

bool keyword_match(std::string_view extracted, std::string_view keyword) {
  const std::string hay = normalize_for_match(extracted);
  if (hay.empty()) return false;
  for (const std::string &alt : split(keyword, '/')) {
    const std::string needle = normalize_for_match(alt);
    if (!needle.empty() && hay.find(needle) != std::string::npos) return true;
  }
  return false;
}

namespace {

bool has_keyword(std::string_view keyword) {
  return !normalize_for_match(keyword).empty();
}

SlotMatch slot(std::string_view extracted, bool extracted_present,
               std::string_view keyword, bool keyword_present) {
  SlotMatch m;
  m.extracted = extracted_present && !trim(extracted).empty();
  m.expected = keyword_present && has_keyword(keyword);
  m.matched = m.extracted && m.expected && keyword_match(extracted, keyword);
  return m;
}

}  // namespace

SlotMatches srl_match(const SrlTriple &extracted, const SrlBenchTriple &bench) {
  SlotMatches m;
  m.subject = slot(extracted.subject, true, bench.subject_keyword, true);
  m.predicate = slot(extracted.predicate, true, bench.predicate_keyword, true);
  m.object = slot(extracted.object.value_or(""), extracted.object.has_value(),
                  bench.object_keyword.value_or(""),
                  bench.object_keyword.has_value());
  return m;
}

SlotMatches unpaired_extraction(const SrlTriple &extracted) {
  SrlBenchTriple none;
  return srl_match(extracted, none);
}

SlotMatches unextracted_benchmark(const SrlBenchTriple &bench) {
  SrlTriple none;
  return srl_match(none, bench);
}

SampleOutcome classify(const SlotMatches &sample) {
  auto base = [](const SlotMatch &m) {
    if (m.matched) return SlotOutcome::kTruePositive;
    if (m.extracted) return SlotOutcome::kFalsePositive;
    if (m.expected) return SlotOutcome::kFalseNegative;
    return SlotOutcome::kNone;
  };
  SampleOutcome out{base(sample.subject), base(sample.predicate),
                    base(sample.object)};
  if (out.predicate == SlotOutcome::kFalsePositive) {
    if (out.subject != SlotOutcome::kNone) out.subject = SlotOutcome::kTrueNegative;
    if (out.object != SlotOutcome::kNone) out.object = SlotOutcome::kTrueNegative;
  } else if (out.predicate == SlotOutcome::kFalseNegative &&
             (out.subject == SlotOutcome::kFalsePositive ||
              out.object == SlotOutcome::kFalsePositive)) {
    out.predicate = SlotOutcome::kTrueNegative;
  }
  return out;
}

namespace {

void tally(SlotOutcome o, ConfusionCounts *c) {
  switch (o) {
    case SlotOutcome::kTruePositive: ++c->tp; break;
    case SlotOutcome::kTrueNegative: ++c->tn; break;
    case SlotOutcome::kFalsePositive: ++c->fp; break;
    case SlotOutcome::kFalseNegative: ++c->fn; break;
    case SlotOutcome::kNone: break;
  }
}

double ratio(size_t num, size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

ConfusionCounts SrlConfusion::arguments() const {
  ConfusionCounts c = subject;
  c += object;
  return c;
}

ConfusionCounts SrlConfusion::overall() const {
  ConfusionCounts c = arguments();
  c += predicate;
  return c;
}

SrlConfusion srl_confusion(std::span<const SlotMatches> samples) {
  SrlConfusion c;
  for (const SlotMatches &s : samples) {
    SampleOutcome o = classify(s);
    tally(o.subject, &c.subject);
    tally(o.predicate, &c.predicate);
    tally(o.object, &c.object);
  }
  return c;
}

SrlReport srl_scores(std::span<const SlotMatches> samples) {
  SrlReport r;
  for (const SlotMatches &s : samples) {
    if (!s.predicate.expected) continue;
    const SampleOutcome o = classify(s);
    ++r.bench_triples;
    ++r.bench_predicates;
    const bool pred_ok = o.predicate == SlotOutcome::kTruePositive;
    if (pred_ok) ++r.correct_predicates;
    auto arg = [&](const SlotMatch &m, SlotOutcome out) {
      if (m.expected) {
        ++r.bench_arguments;
        if (out == SlotOutcome::kTruePositive) ++r.correct_arguments;
      }
      return out == SlotOutcome::kTruePositive || out == SlotOutcome::kNone;
    };
    const bool subj_ok = arg(s.subject, o.subject);
    const bool obj_ok = arg(s.object, o.object);
    if (pred_ok && subj_ok && obj_ok) ++r.correct_triples;
  }
  if (r.bench_triples == 0) {
    throw ValidationError("SRL evaluation needs at least one benchmark triple");
  }
  r.rigid_accuracy = ratio(r.correct_triples, r.bench_triples);
  r.predicate_accuracy = ratio(r.correct_predicates, r.bench_predicates);
  r.argument_accuracy = ratio(r.correct_arguments, r.bench_arguments);
  r.confusion = srl_confusion(samples);
  r.predicate_metrics = ner_metrics(r.confusion.predicate);
  r.argument_metrics = ner_metrics(r.confusion.arguments());
  r.overall_metrics = ner_metrics(r.confusion.overall());
  return r;
}

std::vector<SlotMatches> pair_samples(std::span<const SrlBenchTriple> bench,
                                      std::span<const TripleRecord> predicted) {
  using Key = std::pair<std::string, size_t>;
  std::map<Key, std::vector<const SrlBenchTriple *>> bench_by_sentence;
  for (const SrlBenchTriple &b : bench) {
    bench_by_sentence[{b.doc_id, b.sentence_index}].push_back(&b);
  }
  std::map<Key, std::vector<const SrlTriple *>> pred_by_sentence;
  for (const TripleRecord &p : predicted) {
    Key key{p.doc_id, p.sentence_index};
    if (bench_by_sentence.contains(key)) pred_by_sentence[key].push_back(&p.triple);
  }

  std::vector<SlotMatches> samples;
  for (const auto &[key, bench_list] : bench_by_sentence) {
    std::vector<const SrlTriple *> &cands = pred_by_sentence[key];
    std::vector<bool> used(cands.size(), false);
    for (const SrlBenchTriple *b : bench_list) {
      int best = -1;
      int best_score = -1;
      SlotMatches best_match;
      for (size_t i = 0; i < cands.size(); ++i) {
        if (used[i]) continue;
        SlotMatches m = srl_match(*cands[i], *b);
        const int score = 4 * m.predicate.matched + 2 * m.subject.matched +
                          m.object.matched;
        if (score > best_score) {
          best = static_cast<int>(i);
          best_score = score;
          best_match = m;
        }
      }
      if (best < 0) {
        samples.push_back(unextracted_benchmark(*b));
      } else {
        used[best] = true;
        samples.push_back(best_match);
      }
    }
    for (size_t i = 0; i < cands.size(); ++i) {
      if (!used[i]) samples.push_back(unpaired_extraction(*cands[i]));
    }
  }
  return samples;
}

}  // namespace depex
