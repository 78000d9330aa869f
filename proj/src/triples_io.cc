#include <string>

#include "depex/error.h"
#include "depex/heuristic_srl.h"
#include "json.hpp"

namespace depex {

using nlohmann::ordered_json;

std::string triple_record_to_json(const TripleRecord &record) {
  ordered_json j;
  j["doc_id"] = record.doc_id;
  j["sentence_index"] = record.sentence_index;
  j["subject"] = record.triple.subject;
  j["predicate"] = record.triple.predicate;
  j["object"] = record.triple.object ? ordered_json(*record.triple.object)
                                     : ordered_json(nullptr);
  j["trace"] = record.triple.trace;
  return j.dump();
}

std::vector<TripleRecord> read_triple_records(std::istream &in) {
  std::vector<TripleRecord> records;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ordered_json j = ordered_json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw ParseError(line_no, "not a JSON object");
    }
    try {
      TripleRecord r;
      r.doc_id = j.at("doc_id").get<std::string>();
      r.sentence_index = j.at("sentence_index").get<size_t>();
      const auto &subj = j.at("subject");
      r.triple.subject = subj.is_null() ? std::string() : subj.get<std::string>();
      r.triple.predicate = j.at("predicate").get<std::string>();
      if (j.contains("object") && !j.at("object").is_null()) {
        r.triple.object = j.at("object").get<std::string>();
      }
      if (j.contains("trace")) {
        r.triple.trace = j.at("trace").get<std::vector<std::string>>();
      }
      records.push_back(std::move(r));
    } catch (const nlohmann::json::exception &e) {
      throw ParseError(line_no, std::string("bad triple record: ") + e.what());
    }
  }
  return records;
}

void write_triple_records(std::ostream &out,
                          const std::vector<TripleRecord> &records) {
  for (const TripleRecord &r : records) out << triple_record_to_json(r) << '\n';
}

}  // namespace depex
