#ifndef DEPEX_TEXT_UTIL_H_
#define DEPEX_TEXT_UTIL_H_

#include <string>
#include <string_view>
#include <vector>

namespace depex {

// ASCII-only lowercasing; bytes >= 0x80 pass through untouched so UTF-8
// sequences survive.
std::string ascii_lower(std::string_view s);

// Splits on every occurrence of `sep`, keeping empty pieces.
std::vector<std::string> split(std::string_view s, char sep);

// Splits on runs of ASCII whitespace, dropping empty pieces.
std::vector<std::string> split_whitespace(std::string_view s);

std::string join(const std::vector<std::string> &parts, std::string_view sep);

std::string_view trim(std::string_view s);

// Lowercases, collapses whitespace runs to one space and trims.
std::string normalize_for_match(std::string_view s);

bool starts_with(std::string_view s, std::string_view prefix);

}  // namespace depex

#endif  // DEPEX_TEXT_UTIL_H_
