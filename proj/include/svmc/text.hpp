#pragma once

#include <string>
#include <string_view>
#include <vector>

// Small text helpers shared by the file formats. Doubles are written with
// std::to_chars (shortest representation that round-trips exactly) so files
// are byte-deterministic and lossless.

namespace svmc {

std::string format_double(double value);

/// Strict double parse of the whole token; throws std::invalid_argument.
double parse_double(std::string_view token, std::string_view what);

/// Strict integer parse of the whole token; throws std::invalid_argument.
long long parse_int(std::string_view token, std::string_view what);

/// Whitespace-separated tokens.
std::vector<std::string_view> split_ws(std::string_view line);

/// Comma-separated fields (no quoting; none of our formats needs it).
std::vector<std::string_view> split_csv(std::string_view line);

/// Strip trailing '\r' (files may arrive with CRLF endings).
std::string_view strip_cr(std::string_view line);

/// File name without directory and without a final extension.
std::string path_stem(std::string_view path);

}  // namespace svmc
