#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "depex/cascade.h"
#include "depex/cli.h"
#include "depex/corpus.h"
#include "depex/dataset_kit.h"
#include "depex/error.h"
#include "depex/eval.h"
#include "depex/file_util.h"
#include "depex/heuristic_ner.h"
#include "depex/heuristic_srl.h"
#include "depex/parser_client.h"
#include "depex/report.h"
#include "depex/text_util.h"
#include "json.hpp"

namespace depex {

namespace fs = std::filesystem;

namespace {

struct Options {
  std::vector<std::string> inputs;
  std::string format;
  std::string genre;
  std::string length;
  std::string taxonomy;
  std::string gazetteer;
  std::string endpoint;
  std::string pos_filter = "proper";
  int jobs = 1;
  std::string out;
  bool strict_bio = false;
  size_t max_positions = 0;
  bool no_timestamp = false;

  std::string bench;
  std::string pred;
  std::string method;
  std::string mode = "symbolic";
  size_t k = 100;
  std::vector<std::string> disabled_rules;
  bool biluo_to_bio = false;
  bool bio = false;
  bool ranked = false;
  bool lowercase = false;
  bool keep_html = false;
  bool keep_special = false;
  bool offline = false;
  std::string doc_id;
};

// Everything a command needs; `max_positions_set` mirrors whether the flag
// was given at all.
struct Context {
  Options opts;
  bool max_positions_set = false;
  std::ostream *out = nullptr;
};

// ---------------------------------------------------------------------------
// Shared plumbing

// Resolves where output goes: stdout when --out is absent, `<dir>/<name>`
// when --out names a directory, the path itself otherwise. The parent must
// already exist.
std::optional<fs::path> output_path(const Options &opts,
                                    const std::string &default_name) {
  if (opts.out.empty()) return std::nullopt;
  fs::path p(opts.out);
  if (fs::is_directory(p)) p /= default_name;
  const fs::path parent = p.has_parent_path() ? p.parent_path() : fs::path(".");
  if (!fs::is_directory(parent)) {
    throw ValidationError("output directory " + parent.string() +
                          " does not exist");
  }
  return p;
}

void emit(const Context &ctx, const std::optional<fs::path> &path,
          const std::string &contents) {
  if (path) {
    write_file_atomic(*path, contents);
  } else {
    *ctx.out << contents;
  }
}

void require_inputs(const Options &opts) {
  if (opts.inputs.empty()) throw ValidationError("--input is required");
  for (const std::string &p : opts.inputs) {
    if (!fs::is_regular_file(p)) throw ValidationError("input " + p + " does not exist");
  }
}

void require_file(const std::string &path, const char *flag) {
  if (path.empty()) throw ValidationError(std::string(flag) + " is required");
  if (!fs::is_regular_file(path)) {
    throw ValidationError(std::string(flag) + " file " + path + " does not exist");
  }
}

std::string format_or(const Options &opts, std::string_view fallback) {
  return opts.format.empty() ? std::string(fallback) : opts.format;
}

std::string utc_timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::optional<std::string> timestamp_for(const Options &opts) {
  if (opts.no_timestamp) return std::nullopt;
  return utc_timestamp();
}

std::istringstream open_stream(const std::string &path) {
  return std::istringstream(read_file(path));
}

Genre genre_of(const Options &opts) {
  return opts.genre.empty() ? Genre::kGeneric : parse_genre(opts.genre);
}

LengthClass length_of(const Options &opts) {
  return opts.length.empty() ? LengthClass::kShort : parse_length_class(opts.length);
}

void require_labels(const Options &opts) {
  if (opts.genre.empty() || opts.length.empty()) {
    throw ValidationError("--genre and --length are required for reports");
  }
  parse_genre(opts.genre);
  parse_length_class(opts.length);
}

// CoNLL-U inputs split into documents on `# newdoc id`; text before the first
// marker is named after the file.
std::vector<Document> load_corpus(const Options &opts) {
  require_inputs(opts);
  const Genre genre = genre_of(opts);
  const LengthClass length = length_of(opts);
  std::vector<Document> docs;
  std::set<std::string> seen;
  for (const std::string &path : opts.inputs) {
    ConlluParseResult parsed;
    try {
      parsed = parse_conllu(read_file(path));
    } catch (const ParseError &e) {
      throw ValidationError(path + ": " + e.what());
    }
    for (Document &doc : split_documents(parsed, fs::path(path).stem().string(),
                                         genre, length)) {
      if (!seen.insert(doc.id).second) {
        throw ValidationError("document id '" + doc.id + "' appears twice");
      }
      docs.push_back(std::move(doc));
    }
  }
  return docs;
}

PosFilter pos_filter_of(const Options &opts) {
  if (opts.pos_filter == "proper") return proper_noun_filter();
  if (opts.pos_filter == "nouns") return all_nouns_filter();
  PosFilter filter;
  for (const std::string &tag : split(opts.pos_filter, ',')) {
    std::string_view t = trim(tag);
    if (!t.empty()) filter.emplace(t);
  }
  if (filter.empty()) throw ValidationError("--pos-filter names no tags");
  return filter;
}

SrlRuleConfig srl_config_of(const Options &opts) {
  SrlRuleConfig config;
  for (const std::string &list : opts.disabled_rules) {
    for (const std::string &name : split(list, ',')) {
      auto rule = parse_rule_name(trim(name));
      if (!rule) throw ValidationError("unknown SRL rule '" + name + "'");
      config.disabled.insert(*rule);
    }
  }
  config.validate();
  return config;
}

std::vector<DocumentResult> run_cascade(const std::vector<Document> &docs,
                                        const CascadeConfig &config, int jobs) {
  if (jobs == 1) return run_cascade_serial(docs, config);
  return run_cascade_parallel(docs, config, jobs);
}

void check_jobs(const Options &opts) {
  if (opts.jobs < 0) throw ValidationError("--jobs must be >= 0");
}

// First token position (0-based, document-wide) of every sentence.
std::vector<size_t> sentence_offsets(const Document &doc) {
  std::vector<size_t> offsets;
  size_t at = 0;
  for (const Sentence &s : doc.sentences) {
    offsets.push_back(at);
    at += s.tokens.size();
  }
  return offsets;
}

// Heuristic NER prediction: every occurrence of a top-k noun.
std::map<size_t, std::string> ner_prediction(const Document &doc,
                                             const DocumentResult &result,
                                             size_t k) {
  std::set<std::string> keep;
  for (const RankedNoun &r : top_k(result.noun_counts, k)) keep.insert(r.lemma);
  const std::vector<size_t> offsets = sentence_offsets(doc);
  std::map<size_t, std::string> positions;
  for (const NounCandidate &n : result.nouns) {
    if (keep.contains(noun_key(n))) {
      positions[offsets[n.sentence_index] + n.token_index - 1] = n.form;
    }
  }
  return positions;
}

// ---------------------------------------------------------------------------
// Commands

int cmd_stats(const Context &ctx) {
  const Options &opts = ctx.opts;
  const ReportFormat format = parse_report_format(format_or(opts, "csv"));
  const auto path = output_path(opts, "stats." + format_or(opts, "csv"));
  const std::vector<Document> docs = load_corpus(opts);

  DocumentStats total;
  std::vector<DocumentStats> per_doc;
  for (const Document &d : docs) {
    per_doc.push_back(compute_stats(d));
    total += per_doc.back();
  }
  std::string text;
  if (format == ReportFormat::kJson) {
    nlohmann::ordered_json j;
    j["documents"] = nlohmann::ordered_json::array();
    for (size_t i = 0; i < docs.size(); ++i) {
      j["documents"].push_back({{"doc_id", docs[i].id},
                                {"genre", to_string(docs[i].genre)},
                                {"length", to_string(docs[i].length_class)},
                                {"sentences", per_doc[i].total_sentences},
                                {"tokens", per_doc[i].total_tokens}});
    }
    j["total"] = {{"sentences", total.total_sentences},
                  {"tokens", total.total_tokens}};
    text = j.dump(2) + "\n";
  } else {
    const bool md = format == ReportFormat::kMarkdown;
    const std::string sep = md ? " | " : ",";
    auto line = [&](const std::vector<std::string> &cells) {
      std::string l = md ? "| " : "";
      for (size_t i = 0; i < cells.size(); ++i) {
        if (i) l += sep;
        l += cells[i];
      }
      return l + (md ? " |\n" : "\n");
    };
    text += line({"doc_id", "genre", "length", "sentences", "tokens"});
    if (md) text += "|---|---|---|---:|---:|\n";
    for (size_t i = 0; i < docs.size(); ++i) {
      text += line({docs[i].id, std::string(to_string(docs[i].genre)),
                    std::string(to_string(docs[i].length_class)),
                    std::to_string(per_doc[i].total_sentences),
                    std::to_string(per_doc[i].total_tokens)});
    }
    text += line({"total", "", "", std::to_string(total.total_sentences),
                  std::to_string(total.total_tokens)});
  }
  emit(ctx, path, text);
  return kExitOk;
}

int cmd_preprocess(const Context &ctx) {
  const Options &opts = ctx.opts;
  require_inputs(opts);
  const auto path = output_path(opts, "clean.txt");
  PreprocessConfig config;
  config.strip_html_tags = !opts.keep_html;
  config.strip_special_chars = !opts.keep_special;
  config.lowercase = opts.lowercase;
  std::string text;
  for (const std::string &in : opts.inputs) {
    text += preprocess_text(read_file(in), config) + "\n";
  }
  emit(ctx, path, text);
  return kExitOk;
}

int cmd_parse(const Context &ctx) {
  const Options &opts = ctx.opts;
  require_inputs(opts);
  if (opts.endpoint.empty() && !opts.offline) {
    throw ValidationError("--endpoint is required unless --offline is set");
  }
  if (!opts.doc_id.empty() && opts.inputs.size() > 1) {
    throw ValidationError("--doc-id only applies to a single input");
  }
  const auto path = output_path(opts, "parsed.conllu");

  ParserClient::Options client_opts;
  client_opts.offline = opts.offline;
  if (const char *dir = std::getenv("DEPEX_CACHE_DIR"); dir && *dir) {
    client_opts.cache_dir = fs::path(dir);
  }
  if (opts.offline && !client_opts.cache_dir) {
    throw ValidationError("--offline needs DEPEX_CACHE_DIR");
  }
  const ParserClient client(client_opts);

  std::string conllu;
  for (const std::string &in : opts.inputs) {
    ParseRequest req;
    req.text = read_file(in);
    req.endpoint = opts.endpoint;
    const ParseResponse resp = client.parse_remote(req);
    const std::string id =
        opts.doc_id.empty() ? fs::path(in).stem().string() : opts.doc_id;
    conllu += serialize_conllu(resp.sentences, id);
  }
  emit(ctx, path, conllu);
  return kExitOk;
}

int cmd_ner(const Context &ctx) {
  const Options &opts = ctx.opts;
  check_jobs(opts);
  const auto path = output_path(opts, opts.ranked ? "nouns.tsv" : "ner.tsv");
  CascadeConfig config;
  config.pos_filter = pos_filter_of(opts);
  std::optional<Taxonomy> taxonomy;
  if (!opts.taxonomy.empty()) taxonomy = Taxonomy::load(opts.taxonomy);
  if (opts.k == 0) throw ValidationError("--k must be at least 1");
  const std::vector<Document> docs = load_corpus(opts);
  const std::vector<DocumentResult> results = run_cascade(docs, config, opts.jobs);

  std::string text;
  for (size_t d = 0; d < docs.size(); ++d) {
    if (opts.ranked) {
      const auto ranked =
          top_k(results[d].noun_counts, opts.k, taxonomy ? &*taxonomy : nullptr);
      for (size_t i = 0; i < ranked.size(); ++i) {
        text += docs[d].id + "\t" + std::to_string(i + 1) + "\t" +
                ranked[i].lemma + "\t" + std::to_string(ranked[i].count) +
                "\t" + ranked[i].hypernym.value_or("") + "\n";
      }
    } else {
      for (const auto &[pos, form] : ner_prediction(docs[d], results[d], opts.k)) {
        text += docs[d].id + "\t" + std::to_string(pos) + "\t" + form + "\n";
      }
    }
  }
  emit(ctx, path, text);
  return kExitOk;
}

int cmd_srl(const Context &ctx) {
  const Options &opts = ctx.opts;
  check_jobs(opts);
  const auto path = output_path(opts, "triples.jsonl");
  CascadeConfig config;
  config.srl = srl_config_of(opts);
  const std::vector<Document> docs = load_corpus(opts);
  const std::vector<DocumentResult> results = run_cascade(docs, config, opts.jobs);
  std::ostringstream text;
  for (const DocumentResult &r : results) write_triple_records(text, r.triples);
  emit(ctx, path, text.str());
  return kExitOk;
}

int cmd_annotate(const Context &ctx) {
  const Options &opts = ctx.opts;
  require_file(opts.gazetteer, "--gazetteer");
  const auto path = output_path(opts, "annotated.tsv");
  const Gazetteer gazetteer = Gazetteer::load(opts.gazetteer);
  const std::vector<Document> docs = load_corpus(opts);
  std::vector<LabeledSequence> seqs;
  for (const Document &doc : docs) {
    for (const Sentence &s : doc.sentences) {
      std::vector<std::string> forms;
      for (const Token &t : s.tokens) forms.push_back(t.form);
      LabeledSequence seq = gazetteer_tag(forms, gazetteer);
      seqs.push_back(opts.bio ? biluo_to_bio(seq) : std::move(seq));
    }
  }
  std::ostringstream text;
  write_labeled_tsv(text, seqs);
  emit(ctx, path, text.str());
  return kExitOk;
}

int cmd_convert(const Context &ctx) {
  const Options &opts = ctx.opts;
  if (!opts.biluo_to_bio) throw ValidationError("convert needs --biluo-to-bio");
  require_inputs(opts);
  const auto path = output_path(opts, "converted.tsv");
  std::vector<LabeledSequence> out;
  for (const std::string &in : opts.inputs) {
    std::istringstream stream = open_stream(in);
    std::vector<LabeledSequence> seqs;
    try {
      seqs = read_labeled_tsv(stream, TagScheme::kBiluo);
    } catch (const ParseError &e) {
      throw ValidationError(in + ": " + e.what());
    }
    for (size_t i = 0; i < seqs.size(); ++i) {
      if (opts.strict_bio && !is_well_formed_biluo(seqs[i].tags)) {
        throw ValidationError(in + ": sentence " + std::to_string(i + 1) +
                              " is not well-formed BILUO");
      }
      out.push_back(biluo_to_bio(seqs[i]));
    }
  }
  std::ostringstream text;
  write_labeled_tsv(text, out);
  emit(ctx, path, text.str());
  return kExitOk;
}

std::vector<FrameSentence> load_frame_sentences(const Options &opts) {
  require_inputs(opts);
  std::vector<FrameSentence> all;
  for (const std::string &in : opts.inputs) {
    std::istringstream stream = open_stream(in);
    try {
      for (FrameSentence &s : read_frame_sentences(stream)) all.push_back(std::move(s));
    } catch (const ParseError &e) {
      throw ValidationError(in + ": " + e.what());
    }
  }
  return all;
}

int cmd_broadcast(const Context &ctx) {
  const auto path = output_path(ctx.opts, "frames.jsonl");
  std::vector<FrameSample> samples;
  for (const FrameSentence &s : load_frame_sentences(ctx.opts)) {
    for (FrameSample &f : broadcast_frames(s.tokens, s.annotations)) {
      samples.push_back(std::move(f));
    }
  }
  std::ostringstream text;
  write_frame_samples(text, samples);
  emit(ctx, path, text.str());
  return kExitOk;
}

int cmd_frames2triples(const Context &ctx) {
  const auto path = output_path(ctx.opts, "triples.jsonl");
  std::vector<TripleRecord> records;
  for (const FrameSentence &s : load_frame_sentences(ctx.opts)) {
    for (const FrameSample &f : broadcast_frames(s.tokens, s.annotations)) {
      records.push_back({s.doc_id, s.sentence_index, frames_to_triple(f)});
    }
  }
  std::ostringstream text;
  write_triple_records(text, records);
  emit(ctx, path, text.str());
  return kExitOk;
}

int cmd_weights(const Context &ctx) {
  const Options &opts = ctx.opts;
  require_inputs(opts);
  const auto path = output_path(opts, "weights.json");
  std::map<std::string, size_t> counts;
  for (const std::string &in : opts.inputs) {
    std::istringstream stream = open_stream(in);
    std::map<std::string, size_t> part;
    try {
      if (fs::path(in).extension() == ".jsonl") {
        part = count_tags(std::span<const FrameSample>(read_frame_samples(stream)));
      } else {
        part = count_tags(std::span<const LabeledSequence>(
            read_labeled_tsv(stream, TagScheme::kBiluo)));
      }
    } catch (const ParseError &e) {
      throw ValidationError(in + ": " + e.what());
    }
    for (const auto &[tag, n] : part) counts[tag] += n;
  }
  emit(ctx, path, weights_to_json(class_weights(counts)));
  return kExitOk;
}

template <typename T, typename Reader>
T read_with_path(const std::string &path, Reader reader) {
  std::istringstream stream = open_stream(path);
  try {
    return reader(stream);
  } catch (const ParseError &e) {
    throw ValidationError(path + ": " + e.what());
  }
}

int cmd_eval_ner(const Context &ctx) {
  const Options &opts = ctx.opts;
  check_jobs(opts);
  require_labels(opts);
  require_file(opts.bench, "--bench");
  if (!opts.pred.empty()) require_file(opts.pred, "--pred");
  if (ctx.max_positions_set && opts.max_positions == 0) {
    throw ValidationError("--max-positions must be at least 1");
  }
  if (opts.k == 0) throw ValidationError("--k must be at least 1");
  const NerMode mode = parse_ner_mode(opts.mode);
  const ReportFormat format = parse_report_format(format_or(opts, "json"));
  const auto path = output_path(opts, "ner_report." + format_or(opts, "json"));

  CascadeConfig config;
  config.pos_filter = pos_filter_of(opts);
  const std::vector<Document> docs = load_corpus(opts);
  using Positions = std::map<std::string, std::set<size_t>>;
  const Positions bench = read_with_path<Positions>(opts.bench, read_ner_positions);

  std::map<std::string, size_t> doc_index;
  for (size_t i = 0; i < docs.size(); ++i) doc_index[docs[i].id] = i;
  auto check_docs = [&](const Positions &p, const std::string &file) {
    for (const auto &[id, positions] : p) {
      auto it = doc_index.find(id);
      if (it == doc_index.end()) {
        throw ValidationError(file + ": document '" + id + "' is not in the corpus");
      }
      const size_t total = compute_stats(docs[it->second]).total_tokens;
      if (!positions.empty() && *positions.rbegin() >= total) {
        throw ValidationError(file + ": position " +
                              std::to_string(*positions.rbegin()) + " of '" + id +
                              "' is beyond its " + std::to_string(total) + " tokens");
      }
    }
  };
  check_docs(bench, opts.bench);

  Positions predicted;
  std::string method = opts.method;
  if (!opts.pred.empty()) {
    predicted = read_with_path<Positions>(opts.pred, read_ner_positions);
    check_docs(predicted, opts.pred);
    if (method.empty()) method = "external";
  } else {
    const std::vector<DocumentResult> results = run_cascade(docs, config, opts.jobs);
    for (size_t d = 0; d < docs.size(); ++d) {
      std::set<size_t> &p = predicted[docs[d].id];
      for (const auto &[pos, form] : ner_prediction(docs[d], results[d], opts.k)) {
        p.insert(pos);
      }
    }
    if (method.empty()) method = "heuristic";
  }

  std::vector<NerDocInput> inputs;
  for (const Document &doc : docs) {
    auto b = bench.find(doc.id);
    if (b == bench.end()) continue;
    NerDocInput in;
    in.doc_id = doc.id;
    in.total_tokens = compute_stats(doc).total_tokens;
    in.benchmark = b->second;
    if (auto p = predicted.find(doc.id); p != predicted.end()) in.predicted = p->second;
    if (ctx.max_positions_set) {
      const size_t cap = opts.max_positions;
      in.total_tokens = std::min(in.total_tokens, cap);
      std::erase_if(in.benchmark, [cap](size_t x) { return x >= cap; });
      std::erase_if(in.predicted, [cap](size_t x) { return x >= cap; });
    }
    inputs.push_back(std::move(in));
  }
  if (inputs.empty()) throw ValidationError("benchmark covers no document");

  const std::vector<ConfusionCounts> counts =
      opts.jobs == 1 ? ner_confusion_serial(inputs, mode)
                     : ner_confusion_parallel(inputs, mode, opts.jobs);
  std::vector<ReportRow> rows;
  for (size_t i = 0; i < inputs.size(); ++i) {
    rows.push_back(ner_row(inputs[i].doc_id, opts.genre, opts.length, method, counts[i]));
  }
  emit(ctx, path, render_report(std::move(rows), format, timestamp_for(opts)));
  return kExitOk;
}

int cmd_eval_srl(const Context &ctx) {
  const Options &opts = ctx.opts;
  check_jobs(opts);
  require_labels(opts);
  require_file(opts.bench, "--bench");
  if (!opts.pred.empty()) require_file(opts.pred, "--pred");
  if (opts.pred.empty() && opts.inputs.empty()) {
    throw ValidationError("eval-srl needs --pred or a CoNLL-U --input");
  }
  const ReportFormat format = parse_report_format(format_or(opts, "json"));
  const auto path = output_path(opts, "srl_report." + format_or(opts, "json"));
  CascadeConfig config;
  config.srl = srl_config_of(opts);

  const std::vector<SrlBenchTriple> bench =
      read_with_path<std::vector<SrlBenchTriple>>(opts.bench, read_srl_bench);
  if (bench.empty()) throw ValidationError(opts.bench + ": no benchmark triples");

  std::vector<Document> docs;
  if (!opts.inputs.empty()) {
    docs = load_corpus(opts);
    std::map<std::string, size_t> sentences;
    for (const Document &d : docs) sentences[d.id] = d.sentences.size();
    for (const SrlBenchTriple &b : bench) {
      auto it = sentences.find(b.doc_id);
      if (it == sentences.end()) {
        throw ValidationError(opts.bench + ": document '" + b.doc_id +
                              "' is not in the corpus");
      }
      if (b.sentence_index >= it->second) {
        throw ValidationError(opts.bench + ": sentence " +
                              std::to_string(b.sentence_index) + " of '" +
                              b.doc_id + "' does not exist");
      }
    }
  }

  std::vector<TripleRecord> predicted;
  std::string method = opts.method;
  if (!opts.pred.empty()) {
    predicted = read_with_path<std::vector<TripleRecord>>(opts.pred, read_triple_records);
    if (method.empty()) method = "external";
  } else {
    for (DocumentResult &r : run_cascade(docs, config, opts.jobs)) {
      for (TripleRecord &t : r.triples) predicted.push_back(std::move(t));
    }
    if (method.empty()) method = "heuristic";
  }

  std::map<std::string, SrlDocInput> by_doc;
  for (const SrlBenchTriple &b : bench) {
    SrlDocInput &in = by_doc[b.doc_id];
    in.doc_id = b.doc_id;
    in.bench.push_back(b);
  }
  for (TripleRecord &t : predicted) {
    if (auto it = by_doc.find(t.doc_id); it != by_doc.end()) {
      it->second.predicted.push_back(std::move(t));
    }
  }
  std::vector<SrlDocInput> inputs;
  for (auto &[id, in] : by_doc) inputs.push_back(std::move(in));

  const std::vector<SrlReport> reports = opts.jobs == 1
                                             ? srl_scores_serial(inputs)
                                             : srl_scores_parallel(inputs, opts.jobs);
  std::vector<ReportRow> rows;
  for (size_t i = 0; i < inputs.size(); ++i) {
    rows.push_back(srl_row(inputs[i].doc_id, opts.genre, opts.length, method, reports[i]));
  }
  emit(ctx, path, render_report(std::move(rows), format, timestamp_for(opts)));
  return kExitOk;
}

int cmd_report(const Context &ctx) {
  const Options &opts = ctx.opts;
  require_inputs(opts);
  const ReportFormat format = parse_report_format(format_or(opts, "markdown"));
  const auto path = output_path(opts, "report." + format_or(opts, "markdown"));
  std::vector<ReportRow> rows;
  std::set<std::tuple<std::string, std::string, std::string>> keys;
  for (const std::string &in : opts.inputs) {
    std::vector<ReportRow> part;
    try {
      part = rows_from_json(read_file(in));
    } catch (const ParseError &e) {
      throw ValidationError(in + ": " + e.what());
    }
    for (ReportRow &r : part) {
      if (!keys.insert({r.task, r.doc_id, r.method}).second) {
        throw ValidationError(in + ": duplicate row for " + r.task + "/" +
                              r.doc_id + "/" + r.method);
      }
      rows.push_back(std::move(r));
    }
  }
  emit(ctx, path, render_report(std::move(rows), format, timestamp_for(opts)));
  return kExitOk;
}

// ---------------------------------------------------------------------------
// Flag wiring

void add_input(CLI::App *cmd, Options &o, const char *what) {
  cmd->add_option("--input,-i", o.inputs, what);
}
void add_out(CLI::App *cmd, Options &o) {
  cmd->add_option("--out,-o", o.out, "Output file or existing directory (default stdout)");
}
void add_labels(CLI::App *cmd, Options &o) {
  cmd->add_option("--genre", o.genre, "Document genre: generic|domain");
  cmd->add_option("--length", o.length, "Document length class: short|long");
}
void add_jobs(CLI::App *cmd, Options &o) {
  cmd->add_option("--jobs,-j", o.jobs, "Worker threads (0 = all cores)");
}
void add_format(CLI::App *cmd, Options &o) {
  cmd->add_option("--format", o.format, "json|csv|markdown");
}
void add_report_flags(CLI::App *cmd, Options &o) {
  add_format(cmd, o);
  add_labels(cmd, o);
  add_jobs(cmd, o);
  add_out(cmd, o);
  cmd->add_option("--bench", o.bench, "Benchmark file");
  cmd->add_option("--pred", o.pred, "Prediction file (default: run the heuristic)");
  cmd->add_option("--method", o.method, "Method name for the report rows");
  cmd->add_flag("--no-timestamp", o.no_timestamp, "Omit the generated_at line");
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out,
            std::ostream &err) {
  Context ctx;
  ctx.out = &out;
  Options &o = ctx.opts;

  CLI::App app{"Heuristic NER/SRL extraction and evaluation toolkit", "depex"};
  app.require_subcommand(1);
  std::map<std::string, std::function<int(const Context &)>> handlers;

  auto *stats = app.add_subcommand("stats", "Sentence and token counts per document");
  add_input(stats, o, "CoNLL-U files");
  add_labels(stats, o);
  add_format(stats, o);
  add_out(stats, o);
  handlers["stats"] = cmd_stats;

  auto *pre = app.add_subcommand("preprocess", "Clean raw text");
  add_input(pre, o, "Raw text files");
  add_out(pre, o);
  pre->add_flag("--lowercase", o.lowercase, "Lowercase the text");
  pre->add_flag("--keep-html", o.keep_html, "Do not strip HTML tags");
  pre->add_flag("--keep-special", o.keep_special, "Do not strip special characters");
  handlers["preprocess"] = cmd_preprocess;

  auto *parse = app.add_subcommand("parse", "Parse raw text with a CoreNLP-compatible server");
  add_input(parse, o, "Raw text files");
  add_out(parse, o);
  parse->add_option("--endpoint", o.endpoint, "Server base URL, e.g. http://localhost:9000");
  parse->add_option("--doc-id", o.doc_id, "Document id (default: file stem)");
  parse->add_flag("--offline", o.offline, "Serve only from DEPEX_CACHE_DIR");
  handlers["parse"] = cmd_parse;

  auto *ner = app.add_subcommand("ner", "Heuristic noun-frequency NER");
  add_input(ner, o, "CoNLL-U files");
  add_jobs(ner, o);
  add_out(ner, o);
  ner->add_option("--pos-filter", o.pos_filter, "proper|nouns|comma-separated tags");
  ner->add_option("--k", o.k, "Number of top nouns kept");
  ner->add_option("--taxonomy", o.taxonomy, "lemma<TAB>hypernym file");
  ner->add_flag("--ranked", o.ranked, "Print the ranked noun list instead of positions");
  handlers["ner"] = cmd_ner;

  auto *srl = app.add_subcommand("srl", "Heuristic subject/predicate/object extraction");
  add_input(srl, o, "CoNLL-U files");
  add_jobs(srl, o);
  add_out(srl, o);
  srl->add_option("--disable-rule", o.disabled_rules, "Rules to switch off");
  handlers["srl"] = cmd_srl;

  auto *annotate = app.add_subcommand("annotate", "Gazetteer-tag CoNLL-U tokens");
  add_input(annotate, o, "CoNLL-U files");
  add_out(annotate, o);
  annotate->add_option("--gazetteer", o.gazetteer, "phrase<TAB>label file");
  annotate->add_flag("--bio", o.bio, "Emit BIO instead of BILUO");
  handlers["annotate"] = cmd_annotate;

  auto *convert = app.add_subcommand("convert", "Convert labeled TSV between tag schemes");
  add_input(convert, o, "token<TAB>tag files");
  add_out(convert, o);
  convert->add_flag("--biluo-to-bio", o.biluo_to_bio, "L -> I, U -> B");
  convert->add_flag("--strict-bio", o.strict_bio, "Reject structurally invalid BILUO");
  handlers["convert"] = cmd_convert;

  auto *broadcast = app.add_subcommand("broadcast", "One training sample per SRL frame");
  add_input(broadcast, o, "Frame annotation JSON Lines");
  add_out(broadcast, o);
  handlers["broadcast"] = cmd_broadcast;

  auto *f2t = app.add_subcommand("frames2triples", "Decode SRL frames into triples");
  add_input(f2t, o, "Frame annotation JSON Lines");
  add_out(f2t, o);
  handlers["frames2triples"] = cmd_frames2triples;

  auto *weights = app.add_subcommand("weights", "Inverse-frequency class weights");
  add_input(weights, o, "Labeled TSV or frame-sample JSON Lines (.jsonl)");
  add_out(weights, o);
  handlers["weights"] = cmd_weights;

  auto *eval_ner = app.add_subcommand("eval-ner", "Score NER positions against a benchmark");
  add_input(eval_ner, o, "CoNLL-U corpus");
  add_report_flags(eval_ner, o);
  eval_ner->add_option("--mode", o.mode, "symbolic|data_driven");
  eval_ner->add_option("--max-positions", o.max_positions,
                       "Only score token positions below N");
  eval_ner->add_option("--pos-filter", o.pos_filter, "proper|nouns|comma-separated tags");
  eval_ner->add_option("--k", o.k, "Number of top nouns kept");
  handlers["eval-ner"] = cmd_eval_ner;

  auto *eval_srl = app.add_subcommand("eval-srl", "Score SRL triples against keyword benchmarks");
  add_input(eval_srl, o, "CoNLL-U corpus");
  add_report_flags(eval_srl, o);
  eval_srl->add_option("--disable-rule", o.disabled_rules, "Rules to switch off");
  handlers["eval-srl"] = cmd_eval_srl;

  auto *report = app.add_subcommand("report", "Merge JSON reports and render them");
  add_input(report, o, "JSON report files");
  add_format(report, o);
  add_out(report, o);
  report->add_flag("--no-timestamp", o.no_timestamp, "Omit the generated_at line");
  handlers["report"] = cmd_report;

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  ctx.max_positions_set = eval_ner->count("--max-positions") > 0;
  try {
    return handlers.at(name)(ctx);
  } catch (const TransportError &e) {
    err << "depex " << name << ": " << e.what() << "\n";
    return kExitServer;
  } catch (const ServerError &e) {
    err << "depex " << name << ": " << e.what() << "\n";
    return kExitServer;
  } catch (const ProtocolError &e) {
    err << "depex " << name << ": " << e.what() << "\n";
    return kExitServer;
  } catch (const std::exception &e) {
    err << "depex " << name << ": " << e.what() << "\n";
    return kExitInput;
  }
}

}  // namespace depex
