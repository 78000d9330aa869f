#include "depex/dataset_kit.h"

#include <algorithm>
#include <fstream>
#include <unordered_map>

#include "depex/error.h"
#include "depex/text_util.h"

namespace depex {

std::optional<TagParts> split_tag(std::string_view tag) {
  if (tag == "O") return TagParts{'O', {}};
  if (tag.size() < 3 || tag[1] != '-') return std::nullopt;
  if (std::string_view("BILU").find(tag[0]) == std::string_view::npos) return std::nullopt;
  return TagParts{tag[0], tag.substr(2)};
}

namespace {

bool prefix_allowed(char prefix, TagScheme scheme) {
  switch (prefix) {
    case 'O':
    case 'B':
    case 'I': return true;
    case 'L':
    case 'U': return scheme == TagScheme::kBiluo;
    default: return false;
  }
}

std::string_view scheme_name(TagScheme scheme) {
  return scheme == TagScheme::kBiluo ? "BILUO" : "BIO";
}

}  // namespace

void validate_tags(const LabeledSequence &seq) {
  if (seq.tokens.size() != seq.tags.size()) {
    throw ValidationError("sequence has " + std::to_string(seq.tokens.size()) +
                          " tokens but " + std::to_string(seq.tags.size()) +
                          " tags");
  }
  for (size_t i = 0; i < seq.tags.size(); ++i) {
    auto parts = split_tag(seq.tags[i]);
    if (!parts || !prefix_allowed(parts->prefix, seq.scheme)) {
      throw ValidationError("invalid " + std::string(scheme_name(seq.scheme)) +
                            " tag '" + seq.tags[i] + "' at position " +
                            std::to_string(i + 1));
    }
  }
}

bool is_well_formed_biluo(std::span<const std::string> tags) {
  std::optional<std::string_view> open;
  for (const std::string &tag : tags) {
    auto parts = split_tag(tag);
    if (!parts) return false;
    switch (parts->prefix) {
      case 'O':
        if (open) return false;
        break;
      case 'U':
        if (open) return false;
        break;
      case 'B':
        if (open) return false;
        open = parts->label;
        break;
      case 'I':
        if (!open || *open != parts->label) return false;
        break;
      case 'L':
        if (!open || *open != parts->label) return false;
        open.reset();
        break;
      default: return false;
    }
  }
  return !open;
}

// ---------------------------------------------------------------------------
// Gazetteer

struct Gazetteer::Node {
  std::unordered_map<std::string, std::unique_ptr<Node>> next;
  std::optional<std::string> label;
};

Gazetteer::Gazetteer() : root_(std::make_unique<Node>()) {}
Gazetteer::~Gazetteer() = default;
Gazetteer::Gazetteer(Gazetteer &&) noexcept = default;
Gazetteer &Gazetteer::operator=(Gazetteer &&) noexcept = default;

bool Gazetteer::add(const GazetteerEntry &entry) {
  if (entry.phrase.empty() || entry.label.empty()) {
    throw ValidationError("gazetteer entries need a phrase and a label");
  }
  Node *node = root_.get();
  for (const std::string &word : entry.phrase) {
    if (word.empty()) throw ValidationError("empty word in gazetteer phrase");
    auto &child = node->next[ascii_lower(word)];
    if (!child) child = std::make_unique<Node>();
    node = child.get();
  }
  if (node->label) return false;
  node->label = entry.label;
  ++size_;
  return true;
}

Gazetteer Gazetteer::from_tsv(std::istream &in) {
  Gazetteer g;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || line.front() == '#') continue;
    std::vector<std::string> cols = split(line, '\t');
    if (cols.size() != 2) {
      throw ParseError(line_no, "gazetteer rows are phrase<TAB>label");
    }
    GazetteerEntry entry{split_whitespace(ascii_lower(cols[0])),
                         std::string(trim(cols[1]))};
    if (entry.phrase.empty() || entry.label.empty()) {
      throw ParseError(line_no, "empty phrase or label");
    }
    g.add(entry);
  }
  return g;
}

Gazetteer Gazetteer::load(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open gazetteer " + path);
  return from_tsv(in);
}

std::optional<std::pair<size_t, std::string_view>> Gazetteer::longest_match(
    std::span<const std::string> tokens, size_t start) const {
  std::optional<std::pair<size_t, std::string_view>> best;
  const Node *node = root_.get();
  for (size_t i = start; i < tokens.size(); ++i) {
    auto it = node->next.find(ascii_lower(tokens[i]));
    if (it == node->next.end()) break;
    node = it->second.get();
    if (node->label) best = {{i - start + 1, *node->label}};
  }
  return best;
}

LabeledSequence gazetteer_tag(std::span<const std::string> tokens,
                              const Gazetteer &gazetteer) {
  LabeledSequence seq;
  seq.scheme = TagScheme::kBiluo;
  seq.tokens.assign(tokens.begin(), tokens.end());
  seq.tags.assign(tokens.size(), "O");
  size_t i = 0;
  while (i < tokens.size()) {
    auto match = gazetteer.longest_match(tokens, i);
    if (!match) {
      ++i;
      continue;
    }
    const auto [len, label] = *match;
    const std::string suffix = "-" + std::string(label);
    if (len == 1) {
      seq.tags[i] = "U" + suffix;
    } else {
      seq.tags[i] = "B" + suffix;
      for (size_t k = i + 1; k + 1 < i + len; ++k) seq.tags[k] = "I" + suffix;
      seq.tags[i + len - 1] = "L" + suffix;
    }
    i += len;
  }
  return seq;
}

LabeledSequence biluo_to_bio(const LabeledSequence &seq) {
  if (seq.scheme != TagScheme::kBiluo) {
    throw ValidationError("biluo_to_bio expects a BILUO sequence");
  }
  validate_tags(seq);
  LabeledSequence out = seq;
  out.scheme = TagScheme::kBio;
  for (std::string &tag : out.tags) {
    if (tag[0] == 'L') tag[0] = 'I';
    else if (tag[0] == 'U') tag[0] = 'B';
  }
  return out;
}

std::vector<EntitySpan> decode_spans(const LabeledSequence &seq,
                                     OrphanPolicy policy) {
  if (seq.scheme != TagScheme::kBio) {
    throw ValidationError("decode_spans expects a BIO sequence");
  }
  validate_tags(seq);
  std::vector<EntitySpan> spans;
  std::optional<EntitySpan> open;
  auto close = [&] {
    if (open) spans.push_back(std::move(*open));
    open.reset();
  };
  for (size_t i = 0; i < seq.tags.size(); ++i) {
    TagParts parts = *split_tag(seq.tags[i]);
    if (parts.prefix == 'O') {
      close();
    } else if (parts.prefix == 'I' && open && open->label == parts.label) {
      open->end = i;
    } else {
      if (parts.prefix == 'I' && policy == OrphanPolicy::kStrict) {
        throw ValidationError("orphan tag '" + seq.tags[i] + "' at position " +
                              std::to_string(i));
      }
      close();
      open = EntitySpan{i, i, std::string(parts.label)};
    }
  }
  close();
  return spans;
}

// ---------------------------------------------------------------------------
// SRL frames

std::vector<FrameSample> broadcast_frames(
    std::span<const std::string> tokens,
    std::span<const FrameAnnotation> annotations) {
  std::vector<FrameSample> samples;
  samples.reserve(annotations.size());
  for (size_t a = 0; a < annotations.size(); ++a) {
    const FrameAnnotation &ann = annotations[a];
    if (ann.frames.size() != tokens.size()) {
      throw ValidationError("frame " + std::to_string(a) + " ('" + ann.verb +
                            "') has " + std::to_string(ann.frames.size()) +
                            " tags for " + std::to_string(tokens.size()) +
                            " tokens");
    }
    FrameSample sample;
    sample.tokens.assign(tokens.begin(), tokens.end());
    sample.verb = ann.verb;
    sample.frames.reserve(ann.frames.size());
    size_t verbs = 0;
    for (const std::string &tag : ann.frames) {
      const bool keep = std::find(kFrameLabels.begin(), kFrameLabels.end(),
                                  tag) != kFrameLabels.end();
      sample.frames.push_back(keep ? tag : "O");
      if (tag == "B-V") ++verbs;
    }
    if (verbs != 1) {
      throw ValidationError("frame " + std::to_string(a) + " ('" + ann.verb +
                            "') has " + std::to_string(verbs) +
                            " B-V tags, expected 1");
    }
    samples.push_back(std::move(sample));
  }
  return samples;
}

SrlTriple frames_to_triple(const FrameSample &sample) {
  if (sample.frames.size() != sample.tokens.size()) {
    throw ValidationError("frame sample tags and tokens differ in length");
  }
  auto verb = std::find(sample.frames.begin(), sample.frames.end(), "B-V");
  if (verb == sample.frames.end()) {
    throw ValidationError("frame sample for '" + sample.verb + "' has no B-V");
  }
  // The 7-label set is BIO, so reuse the span decoder on a filtered copy.
  LabeledSequence seq{sample.tokens, sample.frames, TagScheme::kBio};
  for (std::string &tag : seq.tags) {
    if (std::find(kFrameLabels.begin(), kFrameLabels.end(), tag) ==
        kFrameLabels.end()) {
      tag = "O";
    }
  }
  std::vector<EntitySpan> spans = decode_spans(seq);
  auto first = [&](std::string_view label) -> const EntitySpan * {
    for (const EntitySpan &s : spans) {
      if (s.label == label) return &s;
    }
    return nullptr;
  };
  auto text = [&](const EntitySpan &s, std::vector<int> *indices) {
    std::vector<std::string> words;
    for (size_t i = s.start; i <= s.end; ++i) {
      words.push_back(sample.tokens[i]);
      indices->push_back(static_cast<int>(i) + 1);
    }
    return join(words, " ");
  };

  SrlTriple triple;
  const size_t v = static_cast<size_t>(verb - sample.frames.begin());
  triple.predicate = sample.tokens[v];
  triple.predicate_index = static_cast<int>(v) + 1;
  if (const EntitySpan *arg0 = first("ARG0")) {
    triple.subject = text(*arg0, &triple.subject_indices);
    triple.trace.emplace_back("frame_arg0");
  }
  triple.trace.emplace_back("frame_verb");
  if (const EntitySpan *arg1 = first("ARG1")) {
    triple.object = text(*arg1, &triple.object_indices);
    triple.trace.emplace_back("frame_arg1");
  } else if (const EntitySpan *arg2 = first("ARG2")) {
    triple.object = text(*arg2, &triple.object_indices);
    triple.trace.emplace_back("frame_arg2");
  }
  triple.degenerate = triple.subject.empty() && !triple.object;
  return triple;
}

WeightMap class_weights(const std::map<std::string, size_t> &counts) {
  if (counts.empty()) throw ValidationError("no label counts given");
  double total = 0.0;
  for (const auto &[label, n] : counts) {
    if (n == 0) throw ValidationError("label '" + label + "' has zero count");
    total += static_cast<double>(n);
  }
  const double k = static_cast<double>(counts.size());
  WeightMap weights;
  for (const auto &[label, n] : counts) {
    weights[label] = total / (k * static_cast<double>(n));
  }
  return weights;
}

std::map<std::string, size_t> count_tags(std::span<const LabeledSequence> seqs) {
  std::map<std::string, size_t> counts;
  for (const LabeledSequence &s : seqs) {
    for (const std::string &tag : s.tags) {
      if (tag != "O") ++counts[tag];
    }
  }
  return counts;
}

std::map<std::string, size_t> count_tags(std::span<const FrameSample> samples) {
  std::map<std::string, size_t> counts;
  for (const FrameSample &s : samples) {
    for (const std::string &tag : s.frames) {
      if (tag != "O") ++counts[tag];
    }
  }
  return counts;
}

}  // namespace depex
