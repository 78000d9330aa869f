#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "depex/cli.h"
#include "depex/file_util.h"
#include "doctest.h"
#include "support/parse_server.h"

using namespace depex;
namespace fs = std::filesystem;

namespace {

const std::string kFix = DEPEX_FIXTURES;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string> &args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string &name) {
  const fs::path dir = fs::temp_directory_path() / ("depex_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("stats prints sentence and token counts") {
  const Run r = run({"stats", "--input", kFix + "/mini.conllu"});
  CHECK(r.code == 0);
  CHECK(r.out == "doc_id,genre,length,sentences,tokens\nmini,generic,short,3,15\ntotal,,,3,15\n");
  const Run j = run({"stats", "-i", kFix + "/mini_corpus.conllu", "--format", "json",
                     "--genre", "domain", "--length", "long"});
  CHECK(j.code == 0);
  CHECK(j.out.find("\"genre\": \"domain\"") != std::string::npos);
  CHECK(j.out.find("\"tokens\": 42") != std::string::npos);
}

TEST_CASE("convert maps U to B and L to I") {
  const fs::path dir = scratch("convert");
  const Run r = run({"convert", "--biluo-to-bio", "-i", kFix + "/biluo.tsv", "--out",
                     (dir / "bio.tsv").string()});
  CHECK(r.code == 0);
  CHECK(read_file(dir / "bio.tsv") ==
        "Broca\tB-ANAT\narea\tI-ANAT\ncontrols\tO\nspeech\tB-FUNC\n.\tO\n\n"
        "Aphasia\tB-DIS\nwas\tO\ncaused\tO\n.\tO\n\n");
  // An existing directory as --out gets a default file name.
  CHECK(run({"convert", "--biluo-to-bio", "-i", kFix + "/biluo.tsv", "--out", dir.string()})
            .code == 0);
  CHECK(fs::exists(dir / "converted.tsv"));
}

TEST_CASE("strict BILUO check rejects broken structure without writing") {
  const fs::path dir = scratch("strict");
  write_file_atomic(dir / "broken.tsv", "Broca\tB-ANAT\ncontrols\tO\n");
  const fs::path out = dir / "out.tsv";
  const Run lenient = run({"convert", "--biluo-to-bio", "-i", (dir / "broken.tsv").string()});
  CHECK(lenient.code == 0);
  const Run strict = run({"convert", "--biluo-to-bio", "--strict-bio", "-i",
                          (dir / "broken.tsv").string(), "-o", out.string()});
  CHECK(strict.code == 1);
  CHECK(strict.err.find("not well-formed") != std::string::npos);
  CHECK_FALSE(fs::exists(out));
}

TEST_CASE("eval-ner with prediction equal to benchmark scores 1") {
  const Run r = run({"eval-ner", "-i", kFix + "/mini_corpus.conllu", "--bench",
                     kFix + "/ner_bench.tsv", "--pred", kFix + "/ner_bench.tsv", "--genre",
                     "domain", "--length", "short", "--no-timestamp", "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "task,doc_id,genre,length,method,accuracy,recall,precision,f1,tp,tn,fp,fn\n"
        "ner,doc-a,domain,short,external,/,1.0000,1.0000,1.0000,6,0,0,0\n"
        "ner,doc-b,domain,short,external,/,1.0000,1.0000,1.0000,3,0,0,0\n");
  const Run dd = run({"eval-ner", "-i", kFix + "/mini_corpus.conllu", "--bench",
                      kFix + "/ner_bench.tsv", "--pred", kFix + "/ner_bench.tsv", "--genre",
                      "domain", "--length", "short", "--no-timestamp", "--format", "csv",
                      "--mode", "data_driven"});
  CHECK(dd.out.find("ner,doc-a,domain,short,external,1.0000,") != std::string::npos);
}

TEST_CASE("eval-ner heuristic run and position cap") {
  const std::vector<std::string> base = {"eval-ner", "-i", kFix + "/mini_corpus.conllu",
                                         "--bench", kFix + "/ner_bench.tsv", "--genre",
                                         "domain", "--length", "short", "--no-timestamp",
                                         "--format", "csv"};
  const Run r = run(base);
  CHECK(r.code == 0);
  // NNP occurrences: doc-a 0, 6, 12, 23; doc-b 0, 11.
  CHECK(r.out.find("ner,doc-a,domain,short,heuristic,/,0.6667,1.0000,0.8000,4,0,0,2") !=
        std::string::npos);
  CHECK(r.out.find("ner,doc-b,domain,short,heuristic,/,0.6667,1.0000,0.8000,2,0,0,1") !=
        std::string::npos);
  std::vector<std::string> capped = base;
  capped.insert(capped.end(), {"--max-positions", "7"});
  const Run c = run(capped);
  CHECK(c.code == 0);
  // doc-a keeps bench {0, 2, 6}, predictions {0, 6}; doc-b keeps {0, 4} vs {0}.
  CHECK(c.out.find("ner,doc-a,domain,short,heuristic,/,0.6667,1.0000,0.8000,2,0,0,1") !=
        std::string::npos);
  CHECK(c.out.find("ner,doc-b,domain,short,heuristic,/,0.5000,1.0000,0.6667,1,0,0,1") !=
        std::string::npos);
}

TEST_CASE("eval reports are byte-identical across runs and job counts") {
  const fs::path dir = scratch("determinism");
  auto report = [&](const std::string &cmd, const std::string &bench, const std::string &jobs,
                    const std::string &name) {
    const fs::path out = dir / name;
    const Run r = run({cmd, "-i", kFix + "/mini_corpus.conllu", "--bench", kFix + "/" + bench,
                       "--genre", "domain", "--length", "short", "--no-timestamp", "--jobs",
                       jobs, "-o", out.string()});
    CHECK(r.code == 0);
    return read_file(out);
  };
  const std::string ner1 = report("eval-ner", "ner_bench.tsv", "1", "ner1.json");
  CHECK(report("eval-ner", "ner_bench.tsv", "1", "ner1b.json") == ner1);
  CHECK(report("eval-ner", "ner_bench.tsv", "4", "ner4.json") == ner1);
  const std::string srl1 = report("eval-srl", "srl_bench.jsonl", "1", "srl1.json");
  CHECK(report("eval-srl", "srl_bench.jsonl", "3", "srl3.json") == srl1);
  CHECK(srl1.find("\"rigid_accuracy\": 0.6666666666666666") != std::string::npos);
}

TEST_CASE("timestamp is a single suppressible line") {
  const std::vector<std::string> args = {"eval-srl", "-i", kFix + "/mini_corpus.conllu",
                                         "--bench", kFix + "/srl_bench.jsonl", "--genre",
                                         "domain", "--length", "short"};
  const Run with = run(args);
  std::vector<std::string> quiet = args;
  quiet.push_back("--no-timestamp");
  const Run without = run(quiet);
  CHECK(with.out.find("generated_at") != std::string::npos);
  CHECK(without.out.find("generated_at") == std::string::npos);
  // Dropping the timestamp line from one gives the other.
  const size_t start = with.out.find("  \"generated_at\"");
  const size_t end = with.out.find('\n', start);
  CHECK(with.out.substr(0, start) + with.out.substr(end + 1) == without.out);
}

TEST_CASE("report merges JSON reports into one table") {
  const fs::path dir = scratch("report");
  CHECK(run({"eval-ner", "-i", kFix + "/mini_corpus.conllu", "--bench", kFix + "/ner_bench.tsv",
             "--genre", "domain", "--length", "short", "--no-timestamp", "-o",
             (dir / "ner.json").string()})
            .code == 0);
  CHECK(run({"eval-srl", "-i", kFix + "/mini_corpus.conllu", "--bench",
             kFix + "/srl_bench.jsonl", "--genre", "domain", "--length", "short",
             "--no-timestamp", "-o", (dir / "srl.json").string()})
            .code == 0);
  const Run r = run({"report", "-i", (dir / "srl.json").string(), "-i",
                     (dir / "ner.json").string(), "--no-timestamp"});
  CHECK(r.code == 0);
  CHECK(r.out.find("### ner") < r.out.find("### srl"));
  const Run dup = run({"report", "-i", (dir / "ner.json").string(), "-i",
                       (dir / "ner.json").string()});
  CHECK(dup.code == 1);
}

TEST_CASE("srl, ner and dataset commands") {
  const Run srl = run({"srl", "-i", kFix + "/mini_corpus.conllu", "--jobs", "2"});
  CHECK(srl.code == 0);
  CHECK(srl.out.find(R"("predicate":"not be caused")") != std::string::npos);
  const Run no_neg = run({"srl", "-i", kFix + "/mini_corpus.conllu", "--disable-rule",
                          "negation"});
  CHECK(no_neg.out.find(R"("predicate":"be caused")") != std::string::npos);
  CHECK(run({"srl", "-i", kFix + "/mini_corpus.conllu", "--disable-rule", "bogus"}).code == 1);

  const Run ner = run({"ner", "-i", kFix + "/mini_corpus.conllu", "--ranked", "--taxonomy",
                       kFix + "/taxonomy.tsv"});
  CHECK(ner.code == 0);
  CHECK(ner.out.find("doc-a\t1\tbroca\t2\tneurologist\n") != std::string::npos);

  const Run frames = run({"frames2triples", "-i", kFix + "/invite_frames.jsonl"});
  CHECK(frames.code == 0);
  CHECK(frames.out.find(R"("subject":"We","predicate":"invite","object":"you")") !=
        std::string::npos);
  const Run broadcast = run({"broadcast", "-i", kFix + "/invite_frames.jsonl"});
  CHECK(std::count(broadcast.out.begin(), broadcast.out.end(), '\n') == 2);

  const fs::path dir = scratch("weights");
  write_file_atomic(dir / "samples.jsonl", broadcast.out);
  const Run weights = run({"weights", "-i", (dir / "samples.jsonl").string()});
  CHECK(weights.code == 0);
  CHECK(weights.out.find("\"B-V\"") != std::string::npos);

  const Run ann = run({"annotate", "-i", kFix + "/mini_corpus.conllu", "--gazetteer",
                       kFix + "/gazetteer.tsv", "--bio"});
  CHECK(ann.code == 0);
  CHECK(ann.out.find("motor\tB-ANATOMY\ncortex\tI-ANATOMY\n") != std::string::npos);
}

TEST_CASE("preprocess") {
  const fs::path dir = scratch("preprocess");
  write_file_atomic(dir / "raw.txt", "<p>Clinical   Neurology, 8th ed.</p>");
  const Run r = run({"preprocess", "-i", (dir / "raw.txt").string(), "--lowercase"});
  CHECK(r.code == 0);
  CHECK(r.out == "clinical neurology 8th ed\n");
}

TEST_CASE("parse uses the server and the cache") {
  const fs::path dir = scratch("parse");
  write_file_atomic(dir / "cat.txt", "The cat chased the dog .");
  setenv("DEPEX_CACHE_DIR", (dir / "cache").string().c_str(), 1);
  std::string online;
  {
    testing::ParseServer server;
    const Run r = run({"parse", "-i", (dir / "cat.txt").string(), "--endpoint",
                       server.endpoint()});
    CHECK(r.code == 0);
    online = r.out;
  }
  CHECK(online.find("# newdoc id = cat\n") == 0);
  CHECK(online.find("3\tchased\tchase\tVERB\tVBD\t_\t0\troot\t0:root\t_\n") != std::string::npos);
  const Run offline = run({"parse", "-i", (dir / "cat.txt").string(), "--offline"});
  CHECK(offline.code == 0);
  CHECK(offline.out == online);
  unsetenv("DEPEX_CACHE_DIR");
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 1);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"stats", "-i", "/nonexistent.conllu"}).code == 1);
  CHECK(run({"stats", "-i", kFix + "/mini.conllu", "--genre", "poetry"}).code == 1);
  CHECK(run({"eval-ner", "-i", kFix + "/mini_corpus.conllu", "--bench",
             kFix + "/ner_bench.tsv"})
            .code == 1);  // labels missing
  CHECK(run({"eval-ner", "-i", kFix + "/mini.conllu", "--bench", kFix + "/ner_bench.tsv",
             "--genre", "domain", "--length", "short"})
            .code == 1);  // unknown document
  CHECK(run({"parse", "-i", kFix + "/taxonomy.tsv", "--endpoint",
             "http://127.0.0.1:" + std::to_string(testing::unused_port())})
            .code == 2);
  testing::ParseServer failing(503, "busy");
  CHECK(run({"parse", "-i", kFix + "/taxonomy.tsv", "--endpoint", failing.endpoint()}).code ==
        2);
}

TEST_CASE("validation failures leave outputs untouched") {
  const fs::path dir = scratch("nowrite");
  const fs::path out = dir / "report.json";
  write_file_atomic(out, "previous\n");
  const Run r = run({"eval-srl", "-i", kFix + "/mini_corpus.conllu", "--bench",
                     kFix + "/ner_bench.tsv", "--genre", "domain", "--length", "short",
                     "-o", out.string()});
  CHECK(r.code == 1);
  CHECK(read_file(out) == "previous\n");
  CHECK(run({"stats", "-i", kFix + "/mini.conllu", "-o", (dir / "missing/x.csv").string()})
            .code == 1);
}

}  // TEST_SUITE
