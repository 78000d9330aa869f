#include <charconv>
#include <string>

#include "depex/error.h"
#include "depex/eval.h"
#include "depex/text_util.h"
#include "json.hpp"

namespace depex {

std::map<std::string, std::set<size_t>> read_ner_positions(std::istream &in) {
  std::map<std::string, std::set<size_t>> out;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || line.front() == '#') continue;
    std::vector<std::string> cols = split(line, '\t');
    if (cols.size() != 3 || cols[0].empty()) {
      throw ParseError(line_no, "NER rows are doc_id<TAB>token_position<TAB>token");
    }
    size_t pos = 0;
    const std::string &p = cols[1];
    auto [ptr, ec] = std::from_chars(p.data(), p.data() + p.size(), pos);
    if (ec != std::errc() || ptr != p.data() + p.size()) {
      throw ParseError(line_no, "token position '" + p + "' is not a number");
    }
    out[cols[0]].insert(pos);
  }
  return out;
}

std::vector<SrlBenchTriple> read_srl_bench(std::istream &in) {
  std::vector<SrlBenchTriple> out;
  std::string line;
  size_t line_no = 0;
  auto optional_string = [](const nlohmann::json &j, const char *key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::optional<std::string>();
    return std::optional<std::string>(j.at(key).get<std::string>());
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw ParseError(line_no, "not a JSON object");
    }
    try {
      SrlBenchTriple b;
      b.doc_id = j.at("doc_id").get<std::string>();
      b.sentence_index = j.at("sentence_index").get<size_t>();
      b.subject_keyword = optional_string(j, "subject_keyword").value_or("");
      b.predicate_keyword = j.at("predicate_keyword").get<std::string>();
      b.object_keyword = optional_string(j, "object_keyword");
      if (b.object_keyword && trim(*b.object_keyword).empty()) {
        b.object_keyword.reset();
      }
      if (trim(b.predicate_keyword).empty()) {
        throw ParseError(line_no, "predicate_keyword is empty");
      }
      out.push_back(std::move(b));
    } catch (const nlohmann::json::exception &e) {
      throw ParseError(line_no, std::string("bad benchmark triple: ") + e.what());
    }
  }
  return out;
}

}  // namespace depex
