#ifndef DEPEX_CLI_H_
#define DEPEX_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace depex {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitServer = 2;

// Runs one `depex` invocation. `args` excludes the program name. Returns 0 on
// success, 1 on an input or validation error and 2 when the parse server
// cannot be reached or answers badly.
int run_cli(const std::vector<std::string> &args, std::ostream &out,
            std::ostream &err);

}  // namespace depex

#endif  // DEPEX_CLI_H_
