#ifndef DEPEX_TESTS_SUPPORT_FRAMES_H_
#define DEPEX_TESTS_SUPPORT_FRAMES_H_

// The OntoNotes sentence with two annotated predicates ("invite", "watch").

#include <string>
#include <vector>

#include "depex/dataset_kit.h"

namespace depex::testing {

inline const std::vector<std::string> &invite_tokens() {
  static const std::vector<std::string> tokens = {
      "We", "respectfully", "invite", "you", "to", "watch", "a",
      "special", "edition", "of", "Across", "China", "."};
  return tokens;
}

inline std::vector<FrameAnnotation> invite_frames() {
  return {
      {"invite",
       {"B-ARG0", "B-ARGM-MNR", "B-V", "B-ARG1", "B-ARG2", "I-ARG2", "I-ARG2",
        "I-ARG2", "I-ARG2", "I-ARG2", "I-ARG2", "I-ARG2", "O"}},
      {"watch",
       {"O", "O", "O", "B-ARG0", "O", "B-V", "B-ARG1", "I-ARG1", "I-ARG1",
        "I-ARG1", "I-ARG1", "I-ARG1", "O"}},
  };
}

}  // namespace depex::testing

#endif  // DEPEX_TESTS_SUPPORT_FRAMES_H_
