#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace robustness::csv {

/// Shortest round-trip decimal form; "inf", "-inf" for infinities and "" for NaN.
std::string number(double x);

/// Quotes a field when it contains a comma, quote, CR or LF.
std::string field(std::string_view s);

std::string row(const std::vector<std::string> &fields);

}  // namespace robustness::csv
