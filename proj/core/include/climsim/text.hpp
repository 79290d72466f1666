#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace climsim {

/// Shortest decimal form that parses back to the identical double.
std::string format_number(double value);

/// Strict full-string parse; throws ConfigError on trailing garbage.
double parse_number(std::string_view text);

std::string_view trim(std::string_view text);
std::vector<std::string> split(std::string_view text, char delimiter);

/// FNV-1a 64-bit digest rendered as 16 hex digits.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace climsim
