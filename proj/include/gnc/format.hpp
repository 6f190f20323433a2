#pragma once

#include <span>
#include <string>

namespace gnc {

/// Shortest decimal text that parses back to exactly `x`.
std::string format_double(double x);

/// "[a,b,c]" with each entry formatted by format_double.
std::string format_list(std::span<const double> xs);

}  // namespace gnc
