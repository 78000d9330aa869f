#include "depex/parser_client.h"

#include <openssl/evp.h>

#include <array>
#include <functional>
#include <mutex>
#include <semaphore>
#include <unordered_map>

#include "depex/error.h"
#include "depex/file_util.h"
#include "depex/text_util.h"
#include "httplib.h"

namespace depex {

using nlohmann::json;

std::vector<std::string> default_annotators() {
  return {"tokenize", "ssplit", "pos", "lemma", "depparse"};
}

std::string_view ptb_to_upos(std::string_view xpos) {
  static const std::unordered_map<std::string_view, std::string_view> kMap = {
      {"NN", "NOUN"},    {"NNS", "NOUN"},   {"NNP", "PROPN"},  {"NNPS", "PROPN"},
      {"VB", "VERB"},    {"VBD", "VERB"},   {"VBG", "VERB"},   {"VBN", "VERB"},
      {"VBP", "VERB"},   {"VBZ", "VERB"},   {"MD", "AUX"},     {"JJ", "ADJ"},
      {"JJR", "ADJ"},    {"JJS", "ADJ"},    {"RB", "ADV"},     {"RBR", "ADV"},
      {"RBS", "ADV"},    {"WRB", "ADV"},    {"DT", "DET"},     {"PDT", "DET"},
      {"WDT", "DET"},    {"IN", "ADP"},     {"RP", "ADP"},     {"CC", "CCONJ"},
      {"CD", "NUM"},     {"PRP", "PRON"},   {"PRP$", "PRON"},  {"WP", "PRON"},
      {"WP$", "PRON"},   {"EX", "PRON"},    {"TO", "PART"},    {"POS", "PART"},
      {"UH", "INTJ"},    {"SYM", "SYM"},    {"$", "SYM"},      {"#", "SYM"},
      {"FW", "X"},       {"LS", "X"},       {".", "PUNCT"},    {",", "PUNCT"},
      {":", "PUNCT"},    {"``", "PUNCT"},   {"''", "PUNCT"},   {"-LRB-", "PUNCT"},
      {"-RRB-", "PUNCT"}, {"HYPH", "PUNCT"}, {"NFP", "PUNCT"},
  };
  auto it = kMap.find(xpos);
  return it == kMap.end() ? std::string_view() : it->second;
}

namespace {

const json &require(const json &obj, const char *key, std::string_view where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ProtocolError("missing key '" + std::string(key) + "' in " +
                        std::string(where));
  }
  return obj.at(key);
}

std::vector<DepEdge> edges_from(const json &deps, std::string_view where) {
  if (!deps.is_array()) {
    throw ProtocolError(std::string(where) + " is not an array");
  }
  std::vector<DepEdge> edges;
  edges.reserve(deps.size());
  for (const json &d : deps) {
    DepEdge e;
    e.source = require(d, "governor", where).get<int>();
    e.target = require(d, "dependent", where).get<int>();
    e.relation = require(d, "dep", where).get<std::string>();
    if (e.relation == "ROOT") e.relation = "root";
    edges.push_back(std::move(e));
  }
  return edges;
}

}  // namespace

std::vector<Sentence> sentences_from_corenlp_json(const json &doc) {
  std::vector<Sentence> out;
  const json &sentences = require(doc, "sentences", "document");
  if (!sentences.is_array()) throw ProtocolError("'sentences' is not an array");
  for (size_t si = 0; si < sentences.size(); ++si) {
    const json &js = sentences[si];
    const std::string where = "sentences[" + std::to_string(si) + "]";
    Sentence s;
    const json &tokens = require(js, "tokens", where);
    if (!tokens.is_array()) throw ProtocolError(where + ".tokens is not an array");
    for (const json &jt : tokens) {
      Token t;
      t.index = require(jt, "index", where + ".tokens").get<int>();
      t.form = require(jt, "word", where + ".tokens").get<std::string>();
      t.lemma = jt.value("lemma", std::string());
      t.xpos = jt.value("pos", std::string());
      t.upos = jt.contains("upos") ? jt.at("upos").get<std::string>()
                                   : std::string(ptb_to_upos(t.xpos));
      // Surface text rebuilt from the server's whitespace annotations.
      s.text.append(jt.value("originalText", t.form));
      if (&jt != &tokens.back()) s.text.append(jt.value("after", std::string(" ")));
      s.tokens.push_back(std::move(t));
    }
    s.enhanced_edges =
        edges_from(require(js, "enhancedPlusPlusDependencies", where),
                   where + ".enhancedPlusPlusDependencies");
    if (js.contains("basicDependencies")) {
      s.basic_edges = edges_from(js.at("basicDependencies"),
                                 where + ".basicDependencies");
    }
    try {
      validate_sentence(s);
    } catch (const ValidationError &e) {
      throw ProtocolError(where + ": " + e.what());
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::string cache_key(std::string_view text,
                      const std::vector<std::string> &annotators) {
  std::string material = join(annotators, ",");
  material.push_back('\0');
  material.append(text);
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(material.data(), material.size(), md.data(), &len,
                 EVP_sha256(), nullptr) != 1) {
    throw Error("sha256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    hex.push_back(kHex[md[i] >> 4]);
    hex.push_back(kHex[md[i] & 0xf]);
  }
  return hex;
}

std::string request_properties(const std::vector<std::string> &annotators) {
  json props = {{"annotators", join(annotators, ",")}, {"outputFormat", "json"}};
  return props.dump();
}

// ---------------------------------------------------------------------------
// ResponseCache

struct ResponseCache::Locks {
  std::array<std::mutex, 64> stripes;
  std::mutex &for_key(const std::string &key) {
    return stripes[std::hash<std::string>{}(key) % stripes.size()];
  }
};

ResponseCache::ResponseCache(std::filesystem::path dir)
    : dir_(std::move(dir)), locks_(std::make_shared<Locks>()) {
  std::filesystem::create_directories(dir_);
}

std::filesystem::path ResponseCache::path_for(const std::string &key) const {
  return dir_ / (key + ".json");
}

std::optional<std::string> ResponseCache::load(const std::string &key) const {
  std::lock_guard<std::mutex> lock(locks_->for_key(key));
  const auto path = path_for(key);
  if (!std::filesystem::exists(path)) return std::nullopt;
  return read_file(path);
}

void ResponseCache::store(const std::string &key, std::string_view body) const {
  std::lock_guard<std::mutex> lock(locks_->for_key(key));
  write_file_atomic(path_for(key), body);
}

// ---------------------------------------------------------------------------
// ParserClient

struct ParserClient::Shared {
  explicit Shared(size_t limit)
      : in_flight(static_cast<std::ptrdiff_t>(limit == 0 ? 1 : limit)) {}
  std::counting_semaphore<> in_flight;
};

ParserClient::ParserClient(Options options)
    : options_(std::move(options)),
      shared_(std::make_shared<Shared>(options_.max_in_flight)) {
  if (options_.cache_dir) cache_.emplace(*options_.cache_dir);
}

namespace {

struct SplitUrl {
  std::string base;  // scheme://host[:port]
  std::string path;  // always ends with '/'
};

SplitUrl split_endpoint(const std::string &endpoint) {
  size_t scheme = endpoint.find("://");
  if (scheme == std::string::npos) {
    throw TransportError("endpoint '" + endpoint + "' lacks a scheme");
  }
  if (endpoint.compare(0, scheme, "http") != 0) {
    throw TransportError("only http endpoints are supported: " + endpoint);
  }
  size_t slash = endpoint.find('/', scheme + 3);
  SplitUrl url;
  url.base = endpoint.substr(0, slash);
  url.path = slash == std::string::npos ? "/" : endpoint.substr(slash);
  if (url.path.back() != '/') url.path.push_back('/');
  return url;
}

ParseResponse decode(std::string body, bool from_cache) {
  json doc = json::parse(body, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) throw ProtocolError("response is not valid JSON");
  ParseResponse resp;
  try {
    resp.sentences = sentences_from_corenlp_json(doc);
  } catch (const json::exception &e) {
    throw ProtocolError(std::string("unexpected value type: ") + e.what());
  }
  resp.from_cache = from_cache;
  resp.body = std::move(body);
  return resp;
}

}  // namespace

ParseResponse ParserClient::parse_remote(const ParseRequest &request) const {
  if (request.text.empty()) {
    throw ValidationError("parse request text is empty");
  }
  if (request.timeout.count() <= 0) {
    throw ValidationError("parse request timeout must be positive");
  }
  const std::string key = cache_key(request.text, request.annotators);
  if (cache_) {
    if (auto body = cache_->load(key)) return decode(std::move(*body), true);
  }
  if (options_.offline) {
    throw TransportError("offline mode and no cached response for key " + key);
  }

  SplitUrl url = split_endpoint(request.endpoint);
  const std::string target =
      url.path + "?properties=" +
      httplib::detail::encode_query_param(request_properties(request.annotators));

  httplib::Result res{nullptr, httplib::Error::Unknown};
  {
    shared_->in_flight.acquire();
    struct Release {
      std::counting_semaphore<> &sem;
      ~Release() { sem.release(); }
    } release{shared_->in_flight};

    httplib::Client client(url.base);
    const auto usec = std::chrono::duration_cast<std::chrono::microseconds>(
                          request.timeout)
                          .count();
    client.set_connection_timeout(usec / 1000000, usec % 1000000);
    client.set_read_timeout(usec / 1000000, usec % 1000000);
    client.set_write_timeout(usec / 1000000, usec % 1000000);
    res = client.Post(target, request.text, "text/plain; charset=utf-8");
  }
  if (!res) {
    throw TransportError("request to " + request.endpoint +
                         " failed: " + httplib::to_string(res.error()));
  }
  if (res->status < 200 || res->status >= 300) {
    throw ServerError(res->status, res->body.substr(0, 200));
  }
  ParseResponse resp = decode(std::move(res->body), false);
  if (cache_) cache_->store(key, resp.body);
  return resp;
}

}  // namespace depex
