// Serial reference vs OpenMP cascade on a synthetic pre-parsed corpus.

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <vector>

#include "CLI11.hpp"
#include "depex/cascade.h"
#include "depex/synthetic.h"

namespace {

template <typename F>
double best_seconds(int repeat, F &&f) {
  double best = 1e300;
  for (int r = 0; r < repeat; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

size_t triple_count(const std::vector<depex::DocumentResult> &results) {
  size_t n = 0;
  for (const auto &r : results) n += r.triples.size();
  return n;
}

}  // namespace

int main(int argc, char **argv) {
  size_t tokens = 235000;
  size_t docs = 10;
  int repeat = 3;
  std::vector<int> jobs = {1, 2, 4, 8};
  CLI::App app{"Cascade throughput benchmark", "depex_bench"};
  app.add_option("--tokens", tokens, "Corpus size in tokens");
  app.add_option("--docs", docs, "Number of documents");
  app.add_option("--repeat", repeat, "Timed repetitions (best is reported)");
  app.add_option("--jobs", jobs, "Thread counts to time");
  CLI11_PARSE(app, argc, argv);

  const auto corpus = depex::synthetic_corpus(docs, tokens / docs, 20240601);
  size_t actual = 0;
  for (const auto &d : corpus) actual += depex::compute_stats(d).total_tokens;
  const depex::CascadeConfig config;

  std::vector<depex::DocumentResult> ref;
  const double serial = best_seconds(repeat, [&] {
    ref = depex::run_cascade_serial(corpus, config);
  });
  std::printf("corpus: %zu documents, %zu tokens; hardware threads: %d\n",
              corpus.size(), actual, omp_get_num_procs());
  std::printf("%-10s %6s %8s %12s %9s %s\n", "kernel", "jobs", "threads",
              "seconds", "speedup", "triples");
  std::printf("%-10s %6d %8d %12.4f %9.2f %zu\n", "serial", 1, 1, serial, 1.0,
              triple_count(ref));
  for (int j : jobs) {
    std::vector<depex::DocumentResult> par;
    const double t = best_seconds(repeat, [&] {
      par = depex::run_cascade_parallel(corpus, config, j);
    });
    std::printf("%-10s %6d %8d %12.4f %9.2f %zu%s\n", "parallel", j,
                depex::effective_jobs(j), t, serial / t,
                triple_count(par),
                triple_count(par) == triple_count(ref) ? "" : "  MISMATCH");
  }
  return 0;
}
