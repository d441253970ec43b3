#pragma once

#include <string>

namespace siegel {

/// Shortest "%.12g" rendering; every numeric text output goes through here so
/// regression diffs are stable.
std::string format_number(double x);

} // namespace siegel
