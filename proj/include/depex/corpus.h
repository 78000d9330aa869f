#ifndef DEPEX_CORPUS_H_
#define DEPEX_CORPUS_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace depex {

// A syntactic word. Index is 1-based within its sentence.
struct Token {
  int index = 0;
  std::string form;
  std::string lemma;
  std::string upos;
  std::string xpos;

  bool operator==(const Token &) const = default;
};

// Source 0 is the virtual root.
struct DepEdge {
  int source = 0;
  int target = 0;
  std::string relation;

  bool operator==(const DepEdge &) const = default;
};

struct Sentence {
  std::vector<Token> tokens;
  std::vector<DepEdge> basic_edges;
  std::vector<DepEdge> enhanced_edges;
  std::string text;

  bool operator==(const Sentence &) const = default;

  // Token with the given 1-based index, or nullptr.
  const Token *token_at(int index) const;
};

enum class Genre { kGeneric, kDomain };
enum class LengthClass { kShort, kLong };

std::string_view to_string(Genre genre);
std::string_view to_string(LengthClass length);
// Throw ValidationError on anything but "generic|domain" / "short|long".
Genre parse_genre(std::string_view s);
LengthClass parse_length_class(std::string_view s);

// Genre and length class are always supplied by the caller; nothing here
// guesses them from content.
struct Document {
  std::string id;
  Genre genre = Genre::kGeneric;
  LengthClass length_class = LengthClass::kShort;
  std::vector<Sentence> sentences;
};

struct DocumentStats {
  size_t total_sentences = 0;
  size_t total_tokens = 0;

  bool operator==(const DocumentStats &) const = default;
  DocumentStats &operator+=(const DocumentStats &other) {
    total_sentences += other.total_sentences;
    total_tokens += other.total_tokens;
    return *this;
  }
};

DocumentStats compute_stats(const Document &doc);

// Throws ValidationError if the sentence breaks a Token/DepEdge/Sentence
// invariant (consecutive indices, dangling edge ends, multiple roots, ...).
void validate_sentence(const Sentence &sentence);

// Cleaning steps run in declaration order. Defaults: everything on except
// lowercasing.
struct PreprocessConfig {
  bool strip_html_tags = true;
  bool strip_special_chars = true;
  bool collapse_whitespace = true;
  bool lowercase = false;

  static PreprocessConfig all() { return {true, true, true, true}; }
  static PreprocessConfig none() { return {false, false, false, false}; }
};

std::string preprocess_text(std::string_view raw,
                            const PreprocessConfig &config);

// Individual steps. Each is idempotent.
std::string strip_html_tags(std::string_view text);
// Drops ASCII punctuation and symbols; letters, digits, whitespace and
// non-ASCII bytes are kept.
std::string strip_special_chars(std::string_view text);
// Collapses whitespace runs to a single space and trims both ends.
std::string collapse_whitespace(std::string_view text);

// ---------------------------------------------------------------------------
// CoNLL-U

struct ConlluParseResult {
  std::vector<Sentence> sentences;
  // Multiword-token range lines ("3-4") skipped.
  size_t skipped_multiword = 0;
  // Empty-node lines ("8.1") and enhanced heads pointing at them.
  size_t skipped_empty_nodes = 0;
  // `# newdoc id = X` markers: (index of first sentence, id).
  std::vector<std::pair<size_t, std::string>> doc_starts;
};

// Throws ParseError naming the offending 1-based line.
ConlluParseResult parse_conllu(std::string_view text);

// Blocks are written in sentence order. When `doc_id` is non-empty a
// `# newdoc id` comment precedes the first sentence.
std::string serialize_conllu(const std::vector<Sentence> &sentences,
                             std::string_view doc_id = {});

// Groups parsed sentences into documents using the newdoc markers. Sentences
// before the first marker go to a document named `fallback_id`.
std::vector<Document> split_documents(const ConlluParseResult &parsed,
                                      std::string_view fallback_id,
                                      Genre genre, LengthClass length_class);

}  // namespace depex

#endif  // DEPEX_CORPUS_H_
