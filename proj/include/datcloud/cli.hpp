#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace datcloud::cli {

// Exit statuses: 0 no errors, 1 validation errors, 2 parse errors,
// 3 usage or IO error. The highest-severity condition wins.
constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitParse = 2;
constexpr int kExitUsage = 3;

// Runs one invocation. `args` excludes the program name. Diagnostics and
// results go to `out`, usage errors to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace datcloud::cli
