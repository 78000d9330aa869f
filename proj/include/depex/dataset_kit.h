#ifndef DEPEX_DATASET_KIT_H_
#define DEPEX_DATASET_KIT_H_

#include <array>
#include <cstddef>
#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "depex/heuristic_srl.h"

namespace depex {

enum class TagScheme { kBiluo, kBio };

struct LabeledSequence {
  std::vector<std::string> tokens;
  std::vector<std::string> tags;
  TagScheme scheme = TagScheme::kBio;

  bool operator==(const LabeledSequence &) const = default;
};

// "B-ARGM-MNR" -> {'B', "ARGM-MNR"}; "O" -> {'O', ""}. Anything else is
// nullopt. The label is split at the first dash only.
struct TagParts {
  char prefix = 'O';
  std::string_view label;
};
std::optional<TagParts> split_tag(std::string_view tag);

// Per-tag check: equal lengths and every prefix legal for the scheme. Throws
// ValidationError naming the first bad position.
void validate_tags(const LabeledSequence &seq);

// Structural BILUO check: B is followed by I* L of the same label, U stands
// alone, and I/L never appear outside an open entity.
bool is_well_formed_biluo(std::span<const std::string> tags);

struct GazetteerEntry {
  std::vector<std::string> phrase;  // lowercase tokens
  std::string label;
};

// Phrase dictionary matched leftmost-longest, case-insensitively.
class Gazetteer {
 public:
  Gazetteer();
  ~Gazetteer();
  Gazetteer(Gazetteer &&) noexcept;
  Gazetteer &operator=(Gazetteer &&) noexcept;

  // TSV `phrase<TAB>label`, phrase space-separated. '#' lines are comments.
  static Gazetteer from_tsv(std::istream &in);
  static Gazetteer load(const std::string &path);

  // The first label registered for a phrase wins; returns false on repeats.
  bool add(const GazetteerEntry &entry);
  size_t size() const { return size_; }

  // Longest phrase starting at `tokens[start]`: (length, label) or nullopt.
  std::optional<std::pair<size_t, std::string_view>> longest_match(
      std::span<const std::string> tokens, size_t start) const;

 private:
  struct Node;
  std::unique_ptr<Node> root_;
  size_t size_ = 0;
};

LabeledSequence gazetteer_tag(std::span<const std::string> tokens,
                              const Gazetteer &gazetteer);

// L-X -> I-X, U-X -> B-X; B, I and O unchanged.
LabeledSequence biluo_to_bio(const LabeledSequence &seq);

struct EntitySpan {
  size_t start = 0;
  size_t end = 0;  // inclusive
  std::string label;

  auto operator<=>(const EntitySpan &) const = default;
};

enum class OrphanPolicy { kLenient, kStrict };

// Spans of a BIO sequence. An I-X not continuing an X entity is read as B-X
// (lenient) or rejected with ValidationError (strict).
std::vector<EntitySpan> decode_spans(const LabeledSequence &seq,
                                     OrphanPolicy policy = OrphanPolicy::kLenient);

// The seven frame labels kept for training; everything else becomes "O".
inline constexpr std::array<std::string_view, 7> kFrameLabels = {
    "B-ARG0", "I-ARG0", "B-ARG1", "I-ARG1", "B-ARG2", "I-ARG2", "B-V"};

struct FrameAnnotation {
  std::string verb;
  std::vector<std::string> frames;
};

struct FrameSample {
  std::vector<std::string> tokens;
  std::string verb;
  std::vector<std::string> frames;

  bool operator==(const FrameSample &) const = default;
};

// One sample per annotation, each with its own copy of the sentence. Throws
// ValidationError when a frame's length differs from the sentence or, after
// filtering, it does not have exactly one B-V.
std::vector<FrameSample> broadcast_frames(
    std::span<const std::string> tokens,
    std::span<const FrameAnnotation> annotations);

// subject <- ARG0, predicate <- B-V token, object <- ARG1 else ARG2. Token
// indices in the result are 1-based. Throws ValidationError without a B-V.
SrlTriple frames_to_triple(const FrameSample &sample);

using WeightMap = std::map<std::string, double>;

// w(label) = N / (K * n_label). Throws ValidationError on a zero count or an
// empty map.
WeightMap class_weights(const std::map<std::string, size_t> &counts);

// Tag frequencies over "O"-excluded tags.
std::map<std::string, size_t> count_tags(std::span<const LabeledSequence> seqs);
std::map<std::string, size_t> count_tags(std::span<const FrameSample> samples);

// ---------------------------------------------------------------------------
// Files

// TSV `token<TAB>tag`, blank line between sentences.
std::vector<LabeledSequence> read_labeled_tsv(std::istream &in, TagScheme scheme);
void write_labeled_tsv(std::ostream &out, std::span<const LabeledSequence> seqs);

// Frame dataset: JSON Lines {tokens, verb, frames}.
std::vector<FrameSample> read_frame_samples(std::istream &in);
void write_frame_samples(std::ostream &out, std::span<const FrameSample> samples);

// Raw frame annotations: JSON Lines {tokens, srl_frames: [{verb, frames}]},
// optionally with doc_id and sentence_index.
struct FrameSentence {
  std::string doc_id;
  size_t sentence_index = 0;
  std::vector<std::string> tokens;
  std::vector<FrameAnnotation> annotations;
};
std::vector<FrameSentence> read_frame_sentences(std::istream &in);

std::string weights_to_json(const WeightMap &weights);

}  // namespace depex

#endif  // DEPEX_DATASET_KIT_H_
