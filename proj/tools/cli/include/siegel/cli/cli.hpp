#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace siegel::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

/// Runs one siegel-lab invocation. args excludes the program name.
/// Returns 0 on success, 1 on a domain error and 2 on a usage error.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace siegel::cli
