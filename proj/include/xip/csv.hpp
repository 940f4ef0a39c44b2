#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace xip {

// Renders with `significant` digits (general notation) and a period as the
// decimal separator regardless of the global locale.
std::string format_number(double v, int significant = 12);

// Splits on `sep`, trimming ASCII whitespace around each field.
std::vector<std::string> split_fields(std::string_view text, char sep);

// Locale-independent full-string parse; nullopt on any trailing garbage.
std::optional<double> parse_double(std::string_view text);
std::optional<long long> parse_integer(std::string_view text);

}  // namespace xip
