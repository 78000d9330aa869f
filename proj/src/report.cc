#include "depex/report.h"

#include <algorithm>
#include <cstdio>
#include <map>
#include <tuple>

#include "depex/error.h"

namespace depex {

using nlohmann::ordered_json;

ReportFormat parse_report_format(std::string_view s) {
  if (s == "json") return ReportFormat::kJson;
  if (s == "csv") return ReportFormat::kCsv;
  if (s == "markdown" || s == "md") return ReportFormat::kMarkdown;
  throw ValidationError("format must be json, csv or markdown, got '" +
                        std::string(s) + "'");
}

ReportRow ner_row(std::string doc_id, std::string genre, std::string length,
                  std::string method, const ConfusionCounts &counts) {
  const MetricSet m = ner_metrics(counts);
  ReportRow row{"ner", std::move(doc_id), std::move(genre), std::move(length),
                std::move(method), {}, {}};
  row.metrics = {{"accuracy", m.accuracy},
                 {"recall", m.recall},
                 {"precision", m.precision},
                 {"f1", m.f1}};
  row.counts = {{"tp", counts.tp}, {"tn", counts.tn}, {"fp", counts.fp},
                {"fn", counts.fn}};
  return row;
}

ReportRow srl_row(std::string doc_id, std::string genre, std::string length,
                  std::string method, const SrlReport &r) {
  ReportRow row{"srl", std::move(doc_id), std::move(genre), std::move(length),
                std::move(method), {}, {}};
  const MetricSet &all = r.overall_metrics;
  const MetricSet &arg = r.argument_metrics;
  const MetricSet &pred = r.predicate_metrics;
  row.metrics = {{"rigid_accuracy", r.rigid_accuracy},
                 {"accuracy", all.accuracy},
                 {"recall", all.recall},
                 {"precision", all.precision},
                 {"f1", all.f1},
                 {"argument_accuracy", r.argument_accuracy},
                 {"predicate_accuracy", r.predicate_accuracy},
                 {"argument_recall", arg.recall},
                 {"predicate_recall", pred.recall},
                 {"argument_precision", arg.precision},
                 {"predicate_precision", pred.precision},
                 {"argument_f1", arg.f1},
                 {"predicate_f1", pred.f1}};
  const ConfusionCounts c = r.confusion.overall();
  row.counts = {{"bench_triples", r.bench_triples},
                {"correct_triples", r.correct_triples},
                {"bench_predicates", r.bench_predicates},
                {"correct_predicates", r.correct_predicates},
                {"bench_arguments", r.bench_arguments},
                {"correct_arguments", r.correct_arguments},
                {"tp", c.tp},
                {"tn", c.tn},
                {"fp", c.fp},
                {"fn", c.fn}};
  return row;
}

void sort_rows(std::vector<ReportRow> *rows) {
  std::stable_sort(rows->begin(), rows->end(),
                   [](const ReportRow &a, const ReportRow &b) {
                     return std::tie(a.task, a.doc_id, a.method) <
                            std::tie(b.task, b.doc_id, b.method);
                   });
}

namespace {

std::string fixed4(const std::optional<double> &v) {
  if (!v) return "/";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", *v);
  return buf;
}

std::string csv_field(const std::string &s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string md_cell(const std::string &s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

// Rows of one task share a column layout.
std::map<std::string, std::vector<const ReportRow *>> by_task(
    const std::vector<ReportRow> &rows) {
  std::map<std::string, std::vector<const ReportRow *>> groups;
  for (const ReportRow &r : rows) groups[r.task].push_back(&r);
  return groups;
}

std::string render_json(const std::vector<ReportRow> &rows,
                        const std::optional<std::string> &timestamp) {
  ordered_json doc = ordered_json::object();
  if (timestamp) doc["generated_at"] = *timestamp;
  ordered_json jrows = ordered_json::array();
  for (const ReportRow &r : rows) {
    ordered_json jr;
    jr["task"] = r.task;
    jr["doc_id"] = r.doc_id;
    jr["genre"] = r.genre;
    jr["length"] = r.length;
    jr["method"] = r.method;
    ordered_json metrics = ordered_json::object();
    for (const auto &[k, v] : r.metrics) {
      metrics[k] = v ? ordered_json(*v) : ordered_json(nullptr);
    }
    jr["metrics"] = metrics;
    ordered_json counts = ordered_json::object();
    for (const auto &[k, v] : r.counts) counts[k] = v;
    jr["counts"] = counts;
    jrows.push_back(std::move(jr));
  }
  doc["rows"] = std::move(jrows);
  return doc.dump(2) + "\n";
}

std::string render_csv(const std::vector<ReportRow> &rows,
                       const std::optional<std::string> &timestamp) {
  std::string out;
  if (timestamp) out += "# generated_at=" + *timestamp + "\n";
  bool first_group = true;
  for (const auto &[task, group] : by_task(rows)) {
    if (!first_group) out += "\n";
    first_group = false;
    out += "task,doc_id,genre,length,method";
    for (const auto &[k, v] : group.front()->metrics) out += "," + k;
    for (const auto &[k, v] : group.front()->counts) out += "," + k;
    out += "\n";
    for (const ReportRow *r : group) {
      out += csv_field(r->task) + "," + csv_field(r->doc_id) + "," +
             csv_field(r->genre) + "," + csv_field(r->length) + "," +
             csv_field(r->method);
      for (const auto &[k, v] : r->metrics) out += "," + fixed4(v);
      for (const auto &[k, v] : r->counts) out += "," + std::to_string(v);
      out += "\n";
    }
  }
  return out;
}

std::string render_markdown(const std::vector<ReportRow> &rows,
                            const std::optional<std::string> &timestamp) {
  std::string out;
  if (timestamp) out += "_generated at " + *timestamp + "_\n\n";
  bool first_group = true;
  for (const auto &[task, group] : by_task(rows)) {
    if (!first_group) out += "\n";
    first_group = false;
    out += "### " + task + "\n\n| doc_id | genre | length | method |";
    std::string rule = "|---|---|---|---|";
    for (const auto &[k, v] : group.front()->metrics) {
      out += " " + k + " |";
      rule += "---:|";
    }
    out += "\n" + rule + "\n";
    for (const ReportRow *r : group) {
      out += "| " + md_cell(r->doc_id) + " | " + md_cell(r->genre) + " | " +
             md_cell(r->length) + " | " + md_cell(r->method) + " |";
      for (const auto &[k, v] : r->metrics) out += " " + fixed4(v) + " |";
      out += "\n";
    }
  }
  return out;
}

}  // namespace

std::string render_report(std::vector<ReportRow> rows, ReportFormat format,
                          const std::optional<std::string> &timestamp) {
  sort_rows(&rows);
  switch (format) {
    case ReportFormat::kJson: return render_json(rows, timestamp);
    case ReportFormat::kCsv: return render_csv(rows, timestamp);
    case ReportFormat::kMarkdown: return render_markdown(rows, timestamp);
  }
  return {};
}

std::vector<ReportRow> rows_from_json(std::string_view json_text) {
  auto doc = ordered_json::parse(json_text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object() || !doc.contains("rows")) {
    throw ParseError(1, "not a report: expected an object with 'rows'");
  }
  std::vector<ReportRow> rows;
  try {
    for (const auto &jr : doc.at("rows")) {
      ReportRow r;
      r.task = jr.at("task").get<std::string>();
      r.doc_id = jr.at("doc_id").get<std::string>();
      r.genre = jr.at("genre").get<std::string>();
      r.length = jr.at("length").get<std::string>();
      r.method = jr.at("method").get<std::string>();
      for (const auto &[k, v] : jr.at("metrics").items()) {
        r.metrics.emplace_back(k, v.is_null() ? std::optional<double>()
                                              : std::optional<double>(v.get<double>()));
      }
      for (const auto &[k, v] : jr.at("counts").items()) {
        r.counts.emplace_back(k, v.get<size_t>());
      }
      rows.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception &e) {
    throw ParseError(1, std::string("malformed report row: ") + e.what());
  }
  return rows;
}

}  // namespace depex
