#include <string>

#include "depex/dataset_kit.h"
#include "depex/error.h"
#include "depex/text_util.h"
#include "json.hpp"

namespace depex {

using nlohmann::ordered_json;

std::vector<LabeledSequence> read_labeled_tsv(std::istream &in,
                                              TagScheme scheme) {
  std::vector<LabeledSequence> seqs;
  LabeledSequence cur;
  cur.scheme = scheme;
  auto flush = [&] {
    if (!cur.tokens.empty()) seqs.push_back(std::move(cur));
    cur = LabeledSequence();
    cur.scheme = scheme;
  };
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      flush();
      continue;
    }
    std::vector<std::string> cols = split(line, '\t');
    if (cols.size() != 2 || cols[0].empty()) {
      throw ParseError(line_no, "labeled rows are token<TAB>tag");
    }
    cur.tokens.push_back(std::move(cols[0]));
    cur.tags.push_back(std::move(cols[1]));
    try {
      LabeledSequence one{{cur.tokens.back()}, {cur.tags.back()}, scheme};
      validate_tags(one);
    } catch (const ValidationError &e) {
      throw ParseError(line_no, e.what());
    }
  }
  flush();
  return seqs;
}

void write_labeled_tsv(std::ostream &out,
                       std::span<const LabeledSequence> seqs) {
  for (const LabeledSequence &s : seqs) {
    for (size_t i = 0; i < s.tokens.size(); ++i) {
      out << s.tokens[i] << '\t' << s.tags[i] << '\n';
    }
    out << '\n';
  }
}

std::vector<FrameSample> read_frame_samples(std::istream &in) {
  std::vector<FrameSample> samples;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto j = ordered_json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw ParseError(line_no, "not a JSON object");
    }
    try {
      FrameSample s;
      s.tokens = j.at("tokens").get<std::vector<std::string>>();
      s.verb = j.at("verb").get<std::string>();
      s.frames = j.at("frames").get<std::vector<std::string>>();
      samples.push_back(std::move(s));
    } catch (const nlohmann::json::exception &e) {
      throw ParseError(line_no, std::string("bad frame sample: ") + e.what());
    }
  }
  return samples;
}

void write_frame_samples(std::ostream &out,
                         std::span<const FrameSample> samples) {
  for (const FrameSample &s : samples) {
    ordered_json j;
    j["tokens"] = s.tokens;
    j["verb"] = s.verb;
    j["frames"] = s.frames;
    out << j.dump() << '\n';
  }
}

std::vector<FrameSentence> read_frame_sentences(std::istream &in) {
  std::vector<FrameSentence> out;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto j = ordered_json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw ParseError(line_no, "not a JSON object");
    }
    try {
      FrameSentence s;
      s.doc_id = j.value("doc_id", std::string());
      s.sentence_index = j.value("sentence_index", out.size());
      s.tokens = j.at("tokens").get<std::vector<std::string>>();
      for (const auto &f : j.at("srl_frames")) {
        s.annotations.push_back({f.at("verb").get<std::string>(),
                                 f.at("frames").get<std::vector<std::string>>()});
      }
      out.push_back(std::move(s));
    } catch (const nlohmann::json::exception &e) {
      throw ParseError(line_no, std::string("bad frame sentence: ") + e.what());
    }
  }
  return out;
}

std::string weights_to_json(const WeightMap &weights) {
  ordered_json j = ordered_json::object();
  for (const auto &[label, w] : weights) j[label] = w;
  return j.dump(2) + "\n";
}

}  // namespace depex
