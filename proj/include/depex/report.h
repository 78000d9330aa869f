#ifndef DEPEX_REPORT_H_
#define DEPEX_REPORT_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "depex/eval.h"
#include "json.hpp"

namespace depex {

enum class ReportFormat { kJson, kCsv, kMarkdown };

ReportFormat parse_report_format(std::string_view s);

// One (document, method) row. Metric columns follow the table family of the
// task; a missing value renders as "/".
struct ReportRow {
  std::string task;  // "ner" or "srl"
  std::string doc_id;
  std::string genre;
  std::string length;
  std::string method;
  std::vector<std::pair<std::string, std::optional<double>>> metrics;
  std::vector<std::pair<std::string, size_t>> counts;

  bool operator==(const ReportRow &) const = default;
};

ReportRow ner_row(std::string doc_id, std::string genre, std::string length,
                  std::string method, const ConfusionCounts &counts);
ReportRow srl_row(std::string doc_id, std::string genre, std::string length,
                  std::string method, const SrlReport &report);

// Rows sorted by (task, doc_id, method) so output is order-independent.
void sort_rows(std::vector<ReportRow> *rows);

// JSON is canonical; CSV and markdown render the same rows. `timestamp`, when
// set, adds a single header line (a "generated_at" key in JSON).
std::string render_report(std::vector<ReportRow> rows, ReportFormat format,
                          const std::optional<std::string> &timestamp);

// Reads rows back from a JSON report. Throws ParseError on malformed input.
std::vector<ReportRow> rows_from_json(std::string_view json_text);

}  // namespace depex

#endif  // DEPEX_REPORT_H_
