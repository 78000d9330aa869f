// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "depex/cascade.h"
#include "depex/cli.h"
#include "depex/corpus.h"
#include "depex/dataset_kit.h"
#include "depex/error.h"
#include "depex/eval.h"
#include "depex/file_util.h"
#include "depex/heuristic_srl.h"
#include "depex/parser_client.h"
#include "depex/synthetic.h"
#include "support/frames.h"
#include "support/oracles.h"
#include "support/parse_server.h"
#include "support/srl_graphs.h"
#include "support/srl_samples.h"

using namespace depex;
namespace fs = std::filesystem;

namespace {

// Tolerances and sizes.
constexpr int kRandomBiluo = 1000;
constexpr int kRandomFrameSets = 1000;
constexpr int kRandomNer = 1000;
constexpr double kMetricTolerance = 1e-12;
constexpr int kRandomSrlSets = 1000;
constexpr int kRandomConllu = 500;
constexpr size_t kPerfTokens = 235000;
constexpr size_t kPerfDocs = 10;
constexpr double kPerfBudgetSeconds = 10.0;
constexpr int kPerfRepeats = 9;
// Parallel speedup must reach this fraction of the usable thread count.
constexpr double kScalingEfficiency = 0.6;
// With a single hardware thread, parallel runs may not be slower than this
// multiple of the serial time.
constexpr double kSingleCoreSlack = 1.25;

const std::string kFix = DEPEX_FIXTURES;

struct Outcome {
  bool pass = true;
  std::string detail;
};

int g_failures = 0;

void report(int n, const Outcome &o) {
  std::printf("AC%d %s: %s\n", n, o.pass ? "PASS" : "FAIL", o.detail.c_str());
  std::fflush(stdout);
  if (!o.pass) ++g_failures;
}

template <typename F>
void check(int n, F &&f) {
  try {
    report(n, f());
  } catch (const std::exception &e) {
    report(n, {false, std::string("exception: ") + e.what()});
  }
}

std::string fmt(const char *f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome ac1_biluo() {
  LabeledSequence seq;
  seq.scheme = TagScheme::kBiluo;
  seq.tokens = {"a", "b", "c", "d", "e", "f"};
  seq.tags = {"B-X", "I-X", "L-X", "U-Y", "O", "U-X"};
  const LabeledSequence bio = biluo_to_bio(seq);
  const bool mapping = bio.scheme == TagScheme::kBio &&
                       bio.tags == std::vector<std::string>{"B-X", "I-X", "I-X", "B-Y", "O", "B-X"};

  std::mt19937_64 rng(2024);
  int mismatches = 0;
  for (int i = 0; i < kRandomBiluo; ++i) {
    LabeledSequence s;
    s.scheme = TagScheme::kBiluo;
    s.tags = testing::random_biluo(rng, 1 + rng() % 30);
    s.tokens.assign(s.tags.size(), "w");
    const auto expected = testing::brute_force_biluo_spans(s.tags);
    const auto got = decode_spans(biluo_to_bio(s), OrphanPolicy::kStrict);
    if (got != expected) ++mismatches;
  }
  return {mapping && mismatches == 0,
          fmt("mapping %s; %d random sequences, %d span mismatches",
              mapping ? "exact" : "WRONG", kRandomBiluo, mismatches)};
}

Outcome ac2_broadcast() {
  const auto samples = broadcast_frames(testing::invite_tokens(), testing::invite_frames());
  bool example = samples.size() == 2;
  for (const FrameSample &s : samples) {
    example = example && s.tokens.size() == 13 && s.frames.size() == 13;
  }
  example = example && samples[0].frames[1] == "O" && samples[0].verb == "invite" &&
            samples[1].verb == "watch";

  std::mt19937_64 rng(7);
  static const std::vector<std::string> kOther = {"B-ARGM-TMP", "I-ARGM-TMP", "B-ARGM-MNR",
                                                  "B-ARG3", "O"};
  int violations = 0;
  for (int trial = 0; trial < kRandomFrameSets; ++trial) {
    const size_t len = 1 + rng() % 25;
    std::vector<std::string> tokens(len);
    for (size_t i = 0; i < len; ++i) tokens[i] = "t" + std::to_string(i);
    std::vector<FrameAnnotation> annotations(rng() % 5);
    for (FrameAnnotation &a : annotations) {
      a.frames.resize(len);
      const size_t verb = rng() % len;
      for (size_t i = 0; i < len; ++i) {
        if (i == verb) {
          a.frames[i] = "B-V";
        } else if (rng() % 2) {
          a.frames[i] = std::string(kFrameLabels[rng() % 6]);
        } else {
          a.frames[i] = kOther[rng() % kOther.size()];
        }
      }
      a.verb = tokens[verb];
    }
    const auto out = broadcast_frames(tokens, annotations);
    bool ok = out.size() == annotations.size();
    for (size_t k = 0; ok && k < out.size(); ++k) {
      ok = out[k].tokens == tokens && out[k].frames.size() == len;
      for (const std::string &f : out[k].frames) {
        ok = ok && (f == "O" || std::find(kFrameLabels.begin(), kFrameLabels.end(), f) !=
                                    kFrameLabels.end());
      }
    }
    if (!ok) ++violations;
  }
  return {example && violations == 0,
          fmt("example %zu samples of length %zu (MNR->O %s); %d random sets, %d violations",
              samples.size(), samples.empty() ? size_t{0} : samples[0].tokens.size(),
              example ? "yes" : "no", kRandomFrameSets, violations)};
}

Outcome ac3_srl_rules() {
  const auto cases = testing::srl_cases();
  int wrong = 0;
  std::string first;
  for (const auto &c : cases) {
    const auto got = extract_triples(c.sentence);
    if (got.size() != 1 || !(testing::spo_of(got[0]) == c.expected)) {
      ++wrong;
      if (first.empty()) first = " (first: " + c.name + ")";
    }
  }
  const testing::MutationResult m = testing::run_mutation_checks();
  return {wrong == 0 && m.failures == 0,
          fmt("%zu graphs, %d wrong%s; %zu mutation checks, %zu failures", cases.size(),
              wrong, first.c_str(), m.checks, m.failures)};
}

Outcome ac4_metrics() {
  std::mt19937_64 rng(4242);
  int mismatches = 0;
  double worst = 0;
  for (int i = 0; i < kRandomNer; ++i) {
    const size_t total = 1 + rng() % 400;
    const auto pred = testing::random_positions(
        rng, total, std::uniform_real_distribution<double>(0, 0.5)(rng));
    const auto bench = testing::random_positions(
        rng, total, std::uniform_real_distribution<double>(0, 0.5)(rng));
    const auto o = testing::brute_force_confusion(pred, bench, total);
    const auto c = ner_confusion(pred, bench, total, NerMode::kDataDriven);
    const MetricSet r = ner_metrics(c);
    const double p = o.tp + o.fp ? double(o.tp) / double(o.tp + o.fp) : 0.0;
    const double rc = o.tp + o.fn ? double(o.tp) / double(o.tp + o.fn) : 0.0;
    const double f = p + rc > 0 ? 2 * p * rc / (p + rc) : 0.0;
    const double acc = double(o.tp + o.tn) / double(total);
    const double err = std::max({std::abs(r.precision - p), std::abs(r.recall - rc),
                                 std::abs(r.f1 - f), std::abs(r.accuracy.value_or(-1) - acc)});
    worst = std::max(worst, err);
    if (c.tp != o.tp || c.fp != o.fp || c.fn != o.fn || c.tn != o.tn ||
        err > kMetricTolerance) {
      ++mismatches;
    }
  }
  // No shared positions: symbolic mode, every ratio zero, accuracy absent.
  const auto zero_c = ner_confusion({1, 3, 5}, {0, 2, 4, 6}, 10, NerMode::kSymbolic);
  const MetricSet zero = ner_metrics(zero_c);
  const bool zero_row = zero_c.tp == 0 && zero.precision == 0 && zero.recall == 0 &&
                        zero.f1 == 0 && !zero.accuracy;
  const bool symbolic_na =
      !ner_metrics(ner_confusion({1, 2}, {2, 3}, 10, NerMode::kSymbolic)).accuracy;
  return {mismatches == 0 && zero_row && symbolic_na,
          fmt("%d random instances, %d mismatches, max error %.3g (tol %.0e); "
              "tp=0 row all zero: %s; symbolic accuracy absent: %s",
              kRandomNer, mismatches, worst, kMetricTolerance, zero_row ? "yes" : "no",
              symbolic_na ? "yes" : "no")};
}

Outcome ac5_srl_laws() {
  std::mt19937_64 rng(55);
  int sets = 0, violations = 0;
  while (sets < kRandomSrlSets) {
    const auto samples = testing::random_srl_samples(rng);
    if (testing::bench_count(samples) == 0) continue;
    ++sets;
    const SrlReport r = srl_scores(samples);
    if (r.rigid_accuracy > r.predicate_accuracy) ++violations;
  }
  return {violations == 0,
          fmt("%d random sets, %d rigid > predicate violations", sets, violations)};
}

Outcome ac6_roundtrip() {
  int files = 0, failures = 0;
  for (const char *name : {"mini.conllu", "mini_corpus.conllu", "edge_cases.conllu"}) {
    ++files;
    const ConlluParseResult first = parse_conllu(read_file(kFix + "/" + name));
    const ConlluParseResult second = parse_conllu(serialize_conllu(first.sentences));
    if (second.sentences != first.sentences) ++failures;
  }
  std::mt19937_64 rng(66);
  int random_failures = 0;
  for (int i = 0; i < kRandomConllu; ++i) {
    const Sentence s = testing::random_conllu_sentence(rng);
    const auto back = parse_conllu(serialize_conllu({s})).sentences;
    if (back.size() != 1 || !(back[0] == s)) ++random_failures;
  }
  return {failures == 0 && random_failures == 0,
          fmt("%d fixtures, %d failures; %d random sentences, %d failures", files, failures,
              kRandomConllu, random_failures)};
}

Outcome ac7_golden() {
  const auto sentences = sentences_from_corenlp_json(nlohmann::json::parse(testing::golden_body()));
  bool mapped = sentences.size() == 1;
  if (mapped) {
    const Sentence &s = sentences[0];
    const std::vector<std::string> xpos = {"DT", "NN", "VBD", "DT", "NN", "."};
    const std::vector<std::string> upos = {"DET", "NOUN", "VERB", "DET", "NOUN", "PUNCT"};
    mapped = s.tokens.size() == 6;
    for (size_t i = 0; mapped && i < 6; ++i) {
      mapped = s.tokens[i].xpos == xpos[i] && s.tokens[i].upos == upos[i];
    }
    const std::vector<DepEdge> expected = {{0, 3, "root"}, {2, 1, "det"},  {3, 2, "nsubj"},
                                           {5, 4, "det"},  {3, 5, "obj"},  {3, 6, "punct"}};
    for (const DepEdge &e : expected) {
      mapped = mapped && std::count(s.enhanced_edges.begin(), s.enhanced_edges.end(), e) == 1;
    }
    mapped = mapped && s.enhanced_edges.size() == expected.size();
  }

  const fs::path cache = fs::temp_directory_path() / "depex_acceptance_cache";
  fs::remove_all(cache);
  ParseRequest request;
  request.text = "The cat chased the dog .";
  std::string online, offline;
  bool replay_from_cache = false;
  {
    testing::ParseServer server;
    request.endpoint = server.endpoint();
    ParserClient::Options opts;
    opts.cache_dir = cache;
    const ParseResponse r = ParserClient(opts).parse_remote(request);
    std::ostringstream out;
    for (const SrlTriple &t : extract_triples(r.sentences[0])) {
      out << triple_record_to_json({"cat", 0, t}) << "\n";
    }
    online = out.str();
  }
  {
    ParserClient::Options opts;
    opts.cache_dir = cache;
    opts.offline = true;
    const ParseResponse r = ParserClient(opts).parse_remote(request);
    replay_from_cache = r.from_cache;
    std::ostringstream out;
    for (const SrlTriple &t : extract_triples(r.sentences[0])) {
      out << triple_record_to_json({"cat", 0, t}) << "\n";
    }
    offline = out.str();
  }
  fs::remove_all(cache);
  const bool replay = replay_from_cache && !online.empty() && online == offline;
  return {mapped && replay,
          fmt("golden mapping %s (6 tokens, POS, 6 enhanced edges once each); "
              "offline replay %s",
              mapped ? "exact" : "WRONG", replay ? "byte-identical" : "DIFFERS")};
}

double seconds_of(auto &&f) {
  const auto start = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

bool same_output(const std::vector<DocumentResult> &a, const std::vector<DocumentResult> &b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].nouns != b[i].nouns || a[i].triples.size() != b[i].triples.size()) return false;
    for (size_t t = 0; t < a[i].triples.size(); ++t) {
      if (!(a[i].triples[t].triple == b[i].triples[t].triple)) return false;
    }
  }
  return true;
}

Outcome ac8_performance() {
  const auto corpus = synthetic_corpus(kPerfDocs, kPerfTokens / kPerfDocs, 235);
  size_t tokens = 0;
  for (const Document &d : corpus) tokens += compute_stats(d).total_tokens;
  CascadeConfig config;
  const std::vector<int> job_counts = {2, 4};
  const std::vector<DocumentResult> serial = run_cascade_serial(corpus, config);
  std::vector<std::vector<DocumentResult>> parallel;
  for (int jobs : job_counts) parallel.push_back(run_cascade_parallel(corpus, config, jobs));

  // Serial and parallel runs alternate in order and each keeps its best time,
  // so load drift on a shared machine hits every kernel alike. Results are
  // freed outside the timed region.
  double serial_s = 1e9;
  std::vector<double> par_s(job_counts.size(), 1e9);
  std::vector<DocumentResult> scratch;
  auto time_serial = [&] {
    serial_s = std::min(serial_s,
                        seconds_of([&] { scratch = run_cascade_serial(corpus, config); }));
    scratch.clear();
  };
  auto time_parallel = [&] {
    for (size_t j = 0; j < job_counts.size(); ++j) {
      par_s[j] = std::min(par_s[j], seconds_of([&] {
                            scratch = run_cascade_parallel(corpus, config, job_counts[j]);
                          }));
      scratch.clear();
    }
  };
  for (int rep = 0; rep < kPerfRepeats; ++rep) {
    if (rep % 2 == 0) {
      time_serial();
      time_parallel();
    } else {
      time_parallel();
      time_serial();
    }
  }
  const int hw = effective_jobs(1 << 20);
  bool identical = true;
  bool scaling = true;
  std::string scaling_detail;
  for (size_t j = 0; j < job_counts.size(); ++j) {
    identical = identical && same_output(parallel[j], serial);
    const int usable = effective_jobs(job_counts[j]);
    const double speedup = serial_s / par_s[j];
    const bool ok = usable > 1 ? speedup >= kScalingEfficiency * usable
                               : par_s[j] <= kSingleCoreSlack * serial_s;
    scaling = scaling && ok;
    scaling_detail +=
        fmt("; jobs=%d %.2fx (usable threads %d)", job_counts[j], speedup, usable);
  }
  const bool fast = tokens >= kPerfTokens && serial_s < kPerfBudgetSeconds;
  std::string note = hw == 1 ? " [1 hardware thread: linear scaling not measurable here]" : "";
  return {fast && identical && scaling,
          fmt("%zu tokens in %.3f s single-threaded (budget %.0f s)", tokens, serial_s,
              kPerfBudgetSeconds) +
              scaling_detail + (identical ? "; outputs identical" : "; outputs DIFFER") + note};
}

std::string run_cli_capture(const std::vector<std::string> &args, int &code) {
  std::ostringstream out, err;
  code = run_cli(args, out, err);
  return out.str();
}

Outcome ac9_determinism() {
  int runs = 0, differ = 0, errors = 0;
  for (const auto &[cmd, bench] : std::vector<std::pair<std::string, std::string>>{
           {"eval-ner", "ner_bench.tsv"}, {"eval-srl", "srl_bench.jsonl"}}) {
    std::string reference;
    for (const char *jobs : {"1", "1", "2", "4"}) {
      int code = 0;
      const std::string out = run_cli_capture(
          {cmd, "--input", kFix + "/mini_corpus.conllu", "--bench", kFix + "/" + bench,
           "--genre", "domain", "--length", "short", "--jobs", jobs, "--no-timestamp"},
          code);
      ++runs;
      if (code != 0 || out.empty()) ++errors;
      if (reference.empty()) reference = out;
      else if (out != reference) ++differ;
    }
  }
  return {differ == 0 && errors == 0,
          fmt("%d report runs (eval-ner, eval-srl; jobs 1,1,2,4): %d differ, %d errors", runs,
              differ, errors)};
}

}  // namespace

int main() {
  check(1, ac1_biluo);
  check(2, ac2_broadcast);
  check(3, ac3_srl_rules);
  check(4, ac4_metrics);
  check(5, ac5_srl_laws);
  check(6, ac6_roundtrip);
  check(7, ac7_golden);
  check(8, ac8_performance);
  check(9, ac9_determinism);
  return g_failures == 0 ? 0 : 1;
}
