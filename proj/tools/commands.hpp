#pragma once

#include <iosfwd>

namespace discodep::cli {

// Exit codes: 0 success, 1 data or IO error, 2 usage error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsage = 2;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace discodep::cli
