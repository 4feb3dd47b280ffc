#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace rcmm {

/// Shortest decimal representation that reads back to the same double.
std::string format_double(double x);

/// Strict decimal parse (surrounding blanks allowed); throws ParseError.
double parse_double(std::string_view s);

/// Splits on `sep`, trimming blanks around each field.
std::vector<std::string_view> split_fields(std::string_view s, char sep);

std::string_view trim(std::string_view s) noexcept;

}  // namespace rcmm
