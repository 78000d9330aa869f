#include "depex/corpus.h"

#include <cctype>

#include "depex/error.h"
#include "depex/text_util.h"

namespace depex {

const Token *Sentence::token_at(int index) const {
  // Valid sentences keep token i at position i - 1.
  if (index >= 1 && static_cast<size_t>(index) <= tokens.size() &&
      tokens[index - 1].index == index) {
    return &tokens[index - 1];
  }
  for (const Token &t : tokens) {
    if (t.index == index) return &t;
  }
  return nullptr;
}

std::string_view to_string(Genre genre) {
  return genre == Genre::kGeneric ? "generic" : "domain";
}

std::string_view to_string(LengthClass length) {
  return length == LengthClass::kShort ? "short" : "long";
}

Genre parse_genre(std::string_view s) {
  if (s == "generic") return Genre::kGeneric;
  if (s == "domain") return Genre::kDomain;
  throw ValidationError("genre must be generic or domain, got '" +
                        std::string(s) + "'");
}

LengthClass parse_length_class(std::string_view s) {
  if (s == "short") return LengthClass::kShort;
  if (s == "long") return LengthClass::kLong;
  throw ValidationError("length must be short or long, got '" +
                        std::string(s) + "'");
}

DocumentStats compute_stats(const Document &doc) {
  DocumentStats stats;
  stats.total_sentences = doc.sentences.size();
  for (const Sentence &s : doc.sentences) stats.total_tokens += s.tokens.size();
  return stats;
}

void validate_sentence(const Sentence &sentence) {
  const int n = static_cast<int>(sentence.tokens.size());
  for (int i = 0; i < n; ++i) {
    const Token &t = sentence.tokens[i];
    if (t.index != i + 1) {
      throw ValidationError("token indices must be consecutive from 1; found " +
                            std::to_string(t.index) + " at position " +
                            std::to_string(i + 1));
    }
    if (t.form.empty()) {
      throw ValidationError("token " + std::to_string(t.index) +
                            " has an empty form");
    }
  }
  auto check_edges = [n](const std::vector<DepEdge> &edges) {
    for (const DepEdge &e : edges) {
      if (e.target < 1 || e.target > n || e.source < 0 || e.source > n) {
        throw ValidationError("edge " + std::to_string(e.source) + "->" +
                              std::to_string(e.target) +
                              " refers to a missing token");
      }
      if (e.relation.empty()) {
        throw ValidationError("edge " + std::to_string(e.source) + "->" +
                              std::to_string(e.target) + " has no relation");
      }
    }
  };
  check_edges(sentence.basic_edges);
  check_edges(sentence.enhanced_edges);
  int roots = 0;
  for (const DepEdge &e : sentence.basic_edges) {
    if (e.relation == "root") ++roots;
  }
  if (roots > 1) throw ValidationError("more than one root edge");
}

// ---------------------------------------------------------------------------
// Preprocessing

std::string strip_html_tags(std::string_view text) {
  // Removing one tag can splice two halves into a new tag ("<<p>>"), so
  // repeat until nothing matches. Tags become a space to keep words apart.
  std::string cur(text);
  while (true) {
    std::string out;
    out.reserve(cur.size());
    bool changed = false;
    size_t i = 0;
    while (i < cur.size()) {
      if (cur[i] == '<') {
        size_t j = i + 1;
        while (j < cur.size() && cur[j] != '<' && cur[j] != '>') ++j;
        if (j < cur.size() && cur[j] == '>') {
          out.push_back(' ');
          i = j + 1;
          changed = true;
          continue;
        }
      }
      out.push_back(cur[i]);
      ++i;
    }
    if (!changed) return out;
    cur = std::move(out);
  }
}

std::string strip_special_chars(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    const auto u = static_cast<unsigned char>(c);
    if (u >= 0x80 || std::isalnum(u) || std::isspace(u)) out.push_back(c);
  }
  return out;
}

std::string collapse_whitespace(std::string_view text) {
  return join(split_whitespace(text), " ");
}

std::string preprocess_text(std::string_view raw,
                            const PreprocessConfig &config) {
  std::string text(raw);
  if (config.strip_html_tags) text = strip_html_tags(text);
  if (config.strip_special_chars) text = strip_special_chars(text);
  if (config.collapse_whitespace) text = collapse_whitespace(text);
  if (config.lowercase) text = ascii_lower(text);
  return text;
}

}  // namespace depex
