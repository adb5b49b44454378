#pragma once

#include <string>
#include <string_view>
#include <vector>

// Line-oriented helpers for the comma-delimited formats used across the
// toolkit. No quoting: none of the emitted fields ever contain commas.
namespace ridet::csv {

/// Splits on '\n', dropping a trailing '\r' from each line. A trailing
/// final newline does not produce an empty last line.
std::vector<std::string_view> lines(std::string_view text);

/// Splits one line on `sep`, trimming surrounding blanks from each field.
std::vector<std::string_view> fields(std::string_view line, char sep = ',');

std::string_view trim(std::string_view s);

bool parse_double(std::string_view s, double& out);
bool parse_int(std::string_view s, long long& out);
bool parse_uint(std::string_view s, unsigned long long& out);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

}  // namespace ridet::csv
