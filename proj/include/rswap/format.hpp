#pragma once

#include <string>
#include <vector>

namespace rswap {

/// Shortest round-trip representation when precision < 0, otherwise fixed
/// with that many decimals.
std::string format_number(double value, int precision = -1);

/// Left-aligned text table; column widths fit the widest cell.
std::string format_table(const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows);

}  // namespace rswap
