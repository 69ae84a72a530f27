#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace scatdeco::cli {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;

// args[0] is the program name. Table output goes to `out` (or --output),
// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace scatdeco::cli
