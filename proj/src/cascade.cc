#include "depex/cascade.h"

#include <algorithm>

#include <omp.h>

#include <exception>
#include <mutex>

namespace depex {

namespace {

struct SentenceRef {
  size_t doc;
  size_t sentence;
};

struct SentenceResult {
  std::vector<NounCandidate> nouns;
  std::vector<SrlTriple> triples;
  bool fallback = false;
};

SentenceResult process_sentence(const Sentence &s, size_t index,
                                const CascadeConfig &config) {
  SentenceResult r;
  r.nouns = extract_nouns(s, config.pos_filter, index);
  SrlDiagnostics diag;
  r.triples = extract_triples(s, config.srl, &diag);
  r.fallback = diag.basic_fallbacks > 0;
  return r;
}

// Folds per-sentence results into documents in corpus order, so the output
// never depends on which thread produced what.
std::vector<DocumentResult> assemble(std::span<const Document> docs,
                                     std::vector<SentenceResult> &results) {
  std::vector<DocumentResult> out(docs.size());
  size_t flat = 0;
  for (size_t d = 0; d < docs.size(); ++d) {
    DocumentResult &dr = out[d];
    dr.doc_id = docs[d].id;
    for (size_t s = 0; s < docs[d].sentences.size(); ++s, ++flat) {
      SentenceResult &r = results[flat];
      for (NounCandidate &n : r.nouns) {
        ++dr.noun_counts[noun_key(n)];
        dr.nouns.push_back(std::move(n));
      }
      for (SrlTriple &t : r.triples) {
        dr.triples.push_back({dr.doc_id, s, std::move(t)});
      }
      if (r.fallback) ++dr.basic_fallbacks;
    }
  }
  return out;
}

std::vector<SentenceRef> flatten(std::span<const Document> docs) {
  std::vector<SentenceRef> refs;
  for (size_t d = 0; d < docs.size(); ++d) {
    for (size_t s = 0; s < docs[d].sentences.size(); ++s) refs.push_back({d, s});
  }
  return refs;
}

// Runs body(i) for i in [0, n) on `jobs` threads and rethrows the first
// exception after the region ends.
template <typename Body>
void parallel_for(size_t n, int jobs, Body &&body) {
  const int threads = effective_jobs(jobs);
  if (threads == 1) {
    for (size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr error;
  std::mutex error_mu;
  const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 64) num_threads(threads)
  for (long long i = 0; i < count; ++i) {
    try {
      body(static_cast<size_t>(i));
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mu);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace

int effective_jobs(int jobs) {
  const int procs = std::max(1, omp_get_num_procs());
  return jobs > 0 ? std::min(jobs, procs) : std::min(omp_get_max_threads(), procs);
}

std::vector<DocumentResult> run_cascade_serial(std::span<const Document> docs,
                                               const CascadeConfig &config) {
  std::vector<SentenceResult> results;
  for (const Document &doc : docs) {
    for (size_t s = 0; s < doc.sentences.size(); ++s) {
      results.push_back(process_sentence(doc.sentences[s], s, config));
    }
  }
  return assemble(docs, results);
}

std::vector<DocumentResult> run_cascade_parallel(std::span<const Document> docs,
                                                 const CascadeConfig &config,
                                                 int jobs) {
  const std::vector<SentenceRef> refs = flatten(docs);
  std::vector<SentenceResult> results(refs.size());
  parallel_for(refs.size(), jobs, [&](size_t i) {
    const SentenceRef &ref = refs[i];
    results[i] = process_sentence(docs[ref.doc].sentences[ref.sentence],
                                  ref.sentence, config);
  });
  return assemble(docs, results);
}

std::vector<ConfusionCounts> ner_confusion_serial(
    std::span<const NerDocInput> docs, NerMode mode) {
  std::vector<ConfusionCounts> out;
  out.reserve(docs.size());
  for (const NerDocInput &d : docs) {
    out.push_back(ner_confusion(d.predicted, d.benchmark, d.total_tokens, mode));
  }
  return out;
}

std::vector<ConfusionCounts> ner_confusion_parallel(
    std::span<const NerDocInput> docs, NerMode mode, int jobs) {
  std::vector<ConfusionCounts> out(docs.size());
  parallel_for(docs.size(), jobs, [&](size_t i) {
    out[i] = ner_confusion(docs[i].predicted, docs[i].benchmark,
                           docs[i].total_tokens, mode);
  });
  return out;
}

std::vector<SrlReport> srl_scores_serial(std::span<const SrlDocInput> docs) {
  std::vector<SrlReport> out;
  out.reserve(docs.size());
  for (const SrlDocInput &d : docs) {
    out.push_back(srl_scores(pair_samples(d.bench, d.predicted)));
  }
  return out;
}

std::vector<SrlReport> srl_scores_parallel(std::span<const SrlDocInput> docs,
                                           int jobs) {
  std::vector<SrlReport> out(docs.size());
  parallel_for(docs.size(), jobs, [&](size_t i) {
    out[i] = srl_scores(pair_samples(docs[i].bench, docs[i].predicted));
  });
  return out;
}

}  // namespace depex
