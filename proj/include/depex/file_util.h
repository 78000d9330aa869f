#ifndef DEPEX_FILE_UTIL_H_
#define DEPEX_FILE_UTIL_H_

#include <filesystem>
#include <string>
#include <string_view>

namespace depex {

// Whole-file read; throws ValidationError when the file cannot be opened.
std::string read_file(const std::filesystem::path &path);

// Writes to a sibling temp file and renames it over `path`, so readers never
// observe a partially written file.
void write_file_atomic(const std::filesystem::path &path,
                       std::string_view contents);

}  // namespace depex

#endif  // DEPEX_FILE_UTIL_H_
