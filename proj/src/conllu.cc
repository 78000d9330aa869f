#include <charconv>
#include <string>
#include <string_view>
#include <vector>

#include "depex/corpus.h"
#include "depex/error.h"
#include "depex/text_util.h"

namespace depex {

namespace {

constexpr size_t kColumns = 10;
constexpr std::string_view kTextComment = "# text = ";
constexpr std::string_view kNewdocComment = "# newdoc";

bool parse_int(std::string_view s, int *value) {
  if (s.empty()) return false;
  const char *end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, *value);
  return ec == std::errc() && ptr == end;
}

std::string field_or_empty(std::string_view s) {
  return s == "_" ? std::string() : std::string(s);
}

std::string_view underscore_if_empty(const std::string &s) {
  return s.empty() ? std::string_view("_") : std::string_view(s);
}

// Edge with the line it came from, for error messages after the block ends.
struct PendingEdge {
  DepEdge edge;
  size_t line;
};

class BlockReader {
 public:
  explicit BlockReader(ConlluParseResult *result) : result_(result) {}

  void comment(std::string_view line) {
    if (starts_with(line, kTextComment)) {
      current_.text = std::string(line.substr(kTextComment.size()));
    } else if (starts_with(line, kNewdocComment)) {
      std::string_view rest = line.substr(kNewdocComment.size());
      std::string id;
      size_t eq = rest.find('=');
      if (eq != std::string_view::npos) id = std::string(trim(rest.substr(eq + 1)));
      pending_doc_ = std::move(id);
      has_pending_doc_ = true;
    }
  }

  void token_line(std::string_view line, size_t line_no) {
    std::vector<std::string> fields = split(line, '\t');
    if (fields.size() != kColumns) {
      throw ParseError(line_no, "expected 10 tab-separated columns, found " +
                                    std::to_string(fields.size()));
    }
    const std::string &id = fields[0];
    if (id.find('-') != std::string::npos) {
      int a = 0, b = 0;
      size_t dash = id.find('-');
      if (!parse_int(std::string_view(id).substr(0, dash), &a) ||
          !parse_int(std::string_view(id).substr(dash + 1), &b)) {
        throw ParseError(line_no, "malformed multiword range '" + id + "'");
      }
      ++result_->skipped_multiword;
      return;
    }
    if (id.find('.') != std::string::npos) {
      ++result_->skipped_empty_nodes;
      return;
    }
    int index = 0;
    if (!parse_int(id, &index)) {
      throw ParseError(line_no, "token index '" + id + "' is not an integer");
    }
    const int expected = static_cast<int>(current_.tokens.size()) + 1;
    if (index != expected) {
      throw ParseError(line_no, "token index " + std::to_string(index) +
                                    " out of sequence, expected " +
                                    std::to_string(expected));
    }
    if (fields[1].empty()) throw ParseError(line_no, "empty FORM column");

    Token token;
    token.index = index;
    token.form = fields[1];
    token.lemma = field_or_empty(fields[2]);
    token.upos = field_or_empty(fields[3]);
    token.xpos = field_or_empty(fields[4]);
    current_.tokens.push_back(std::move(token));

    if (fields[6] != "_") {
      int head = 0;
      if (!parse_int(fields[6], &head) || head < 0) {
        throw ParseError(line_no, "HEAD '" + fields[6] + "' is not a valid index");
      }
      if (fields[7] == "_" || fields[7].empty()) {
        throw ParseError(line_no, "HEAD given without DEPREL");
      }
      basic_.push_back({{head, index, fields[7]}, line_no});
    }

    if (fields[8] != "_") {
      for (const std::string &dep : split(fields[8], '|')) {
        size_t colon = dep.find(':');
        if (colon == std::string::npos || colon == 0 ||
            colon + 1 == dep.size()) {
          throw ParseError(line_no, "DEPS entry '" + dep +
                                        "' is not head:relation");
        }
        std::string_view head_str = std::string_view(dep).substr(0, colon);
        if (head_str.find('.') != std::string_view::npos) {
          ++result_->skipped_empty_nodes;
          continue;
        }
        int head = 0;
        if (!parse_int(head_str, &head) || head < 0) {
          throw ParseError(line_no, "DEPS head '" + std::string(head_str) +
                                        "' is not a valid index");
        }
        enhanced_.push_back({{head, index, dep.substr(colon + 1)}, line_no});
      }
    }
  }

  void finish_block() {
    if (current_.tokens.empty()) {
      // Comment-only block: keep the text/doc markers for the next one.
      basic_.clear();
      enhanced_.clear();
      return;
    }
    const int n = static_cast<int>(current_.tokens.size());
    size_t root_line = 0;
    for (const PendingEdge &p : basic_) {
      check_range(p, n);
      if (p.edge.relation == "root") {
        if (root_line != 0) {
          throw ParseError(p.line, "second root edge in sentence (first at line " +
                                       std::to_string(root_line) + ")");
        }
        root_line = p.line;
      }
      current_.basic_edges.push_back(p.edge);
    }
    for (const PendingEdge &p : enhanced_) {
      check_range(p, n);
      current_.enhanced_edges.push_back(p.edge);
    }
    if (has_pending_doc_) {
      result_->doc_starts.emplace_back(result_->sentences.size(),
                                       std::move(pending_doc_));
      has_pending_doc_ = false;
      pending_doc_.clear();
    }
    result_->sentences.push_back(std::move(current_));
    current_ = Sentence();
    basic_.clear();
    enhanced_.clear();
  }

 private:
  static void check_range(const PendingEdge &p, int n) {
    if (p.edge.source > n) {
      throw ParseError(p.line, "head " + std::to_string(p.edge.source) +
                                   " beyond last token " + std::to_string(n));
    }
  }

  ConlluParseResult *result_;
  Sentence current_;
  std::vector<PendingEdge> basic_;
  std::vector<PendingEdge> enhanced_;
  std::string pending_doc_;
  bool has_pending_doc_ = false;
};

}  // namespace

ConlluParseResult parse_conllu(std::string_view text) {
  ConlluParseResult result;
  BlockReader reader(&result);
  size_t line_no = 0;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t nl = text.find('\n', pos);
    std::string_view line = nl == std::string_view::npos
                                ? text.substr(pos)
                                : text.substr(pos, nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (line.empty()) {
      reader.finish_block();
    } else if (line.front() == '#') {
      reader.comment(line);
    } else {
      reader.token_line(line, line_no);
    }
  }
  reader.finish_block();
  return result;
}

std::string serialize_conllu(const std::vector<Sentence> &sentences,
                             std::string_view doc_id) {
  std::string out;
  bool first = true;
  for (const Sentence &s : sentences) {
    if (first && !doc_id.empty()) {
      out.append("# newdoc id = ").append(doc_id).push_back('\n');
    }
    first = false;
    if (!s.text.empty()) out.append(kTextComment).append(s.text).push_back('\n');

    // One HEAD/DEPREL per token; DEPS keeps the stored order per target.
    std::vector<const DepEdge *> head_of(s.tokens.size() + 1, nullptr);
    for (const DepEdge &e : s.basic_edges) {
      if (e.target >= 1 && static_cast<size_t>(e.target) <= s.tokens.size() &&
          head_of[e.target] == nullptr) {
        head_of[e.target] = &e;
      }
    }
    std::vector<std::string> deps(s.tokens.size() + 1);
    for (const DepEdge &e : s.enhanced_edges) {
      if (e.target < 1 || static_cast<size_t>(e.target) > s.tokens.size()) continue;
      std::string &d = deps[e.target];
      if (!d.empty()) d.push_back('|');
      d.append(std::to_string(e.source)).push_back(':');
      d.append(e.relation);
    }

    for (const Token &t : s.tokens) {
      const DepEdge *head = head_of[t.index];
      out.append(std::to_string(t.index)).push_back('\t');
      out.append(t.form).push_back('\t');
      out.append(underscore_if_empty(t.lemma)).push_back('\t');
      out.append(underscore_if_empty(t.upos)).push_back('\t');
      out.append(underscore_if_empty(t.xpos)).append("\t_\t");
      if (head) {
        out.append(std::to_string(head->source)).push_back('\t');
        out.append(head->relation).push_back('\t');
      } else {
        out.append("_\t_\t");
      }
      out.append(underscore_if_empty(deps[t.index])).append("\t_\n");
    }
    out.push_back('\n');
  }
  return out;
}

std::vector<Document> split_documents(const ConlluParseResult &parsed,
                                      std::string_view fallback_id,
                                      Genre genre, LengthClass length_class) {
  std::vector<Document> docs;
  size_t marker = 0;
  for (size_t i = 0; i < parsed.sentences.size(); ++i) {
    if (marker < parsed.doc_starts.size() &&
        parsed.doc_starts[marker].first == i) {
      Document doc;
      doc.id = parsed.doc_starts[marker].second;
      if (doc.id.empty()) doc.id = std::string(fallback_id) + "-" + std::to_string(marker + 1);
      doc.genre = genre;
      doc.length_class = length_class;
      docs.push_back(std::move(doc));
      ++marker;
    } else if (docs.empty()) {
      docs.push_back({std::string(fallback_id), genre, length_class, {}});
    }
    docs.back().sentences.push_back(parsed.sentences[i]);
  }
  return docs;
}

}  // namespace depex
