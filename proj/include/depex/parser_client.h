#ifndef DEPEX_PARSER_CLIENT_H_
#define DEPEX_PARSER_CLIENT_H_

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "depex/corpus.h"
#include "json.hpp"

namespace depex {

std::vector<std::string> default_annotators();

struct ParseRequest {
  std::string text;
  std::vector<std::string> annotators = default_annotators();
  // Base URL of a CoreNLP-compatible server, e.g. "http://localhost:9000".
  std::string endpoint;
  std::chrono::duration<double> timeout{60.0};
};

struct ParseResponse {
  std::vector<Sentence> sentences;
  bool from_cache = false;
  // Raw server body the sentences were decoded from.
  std::string body;
};

// Maps a CoreNLP JSON document onto sentences. Basic edges come from
// `basicDependencies`, enhanced edges from `enhancedPlusPlusDependencies`.
// Throws ProtocolError naming the first missing key.
std::vector<Sentence> sentences_from_corenlp_json(const nlohmann::json &doc);

// Coarse tag for a Penn Treebank tag; empty when unknown.
std::string_view ptb_to_upos(std::string_view xpos);

// SHA-256 hex digest of the annotator list and text.
std::string cache_key(std::string_view text,
                      const std::vector<std::string> &annotators);

// `properties` query value sent with every request.
std::string request_properties(const std::vector<std::string> &annotators);

// On-disk response store: `<dir>/<sha256>.json`.
class ResponseCache {
 public:
  explicit ResponseCache(std::filesystem::path dir);

  std::optional<std::string> load(const std::string &key) const;
  void store(const std::string &key, std::string_view body) const;
  std::filesystem::path path_for(const std::string &key) const;

 private:
  struct Locks;
  std::filesystem::path dir_;
  std::shared_ptr<Locks> locks_;
};

// Thread-safe; share one instance across workers. At most `max_in_flight`
// HTTP requests run at once.
class ParserClient {
 public:
  struct Options {
    size_t max_in_flight = 4;
    std::optional<std::filesystem::path> cache_dir;
    // Serve only from cache; a miss is a TransportError.
    bool offline = false;
  };

  explicit ParserClient(Options options);
  ParserClient() : ParserClient(Options{}) {}

  // Throws ValidationError for an empty text or non-positive timeout (no
  // request is sent), TransportError, ServerError or ProtocolError.
  ParseResponse parse_remote(const ParseRequest &request) const;

 private:
  struct Shared;
  Options options_;
  std::optional<ResponseCache> cache_;
  std::shared_ptr<Shared> shared_;
};

}  // namespace depex

#endif  // DEPEX_PARSER_CLIENT_H_
