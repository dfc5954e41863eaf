#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nsp::detail {

/// One non-blank, non-comment line of a comma-delimited document.
struct Row {
    std::size_t line = 0; // 1-based
    std::vector<std::string_view> fields;
};

std::string_view trim(std::string_view s);

/// Splits a document into rows. Blank lines and lines whose first
/// non-space character is '#' are dropped. Fields are trimmed.
std::vector<Row> split_rows(std::string_view document);

std::optional<double> parse_double(std::string_view s);
std::optional<std::int64_t> parse_int(std::string_view s);

std::string join_fields(const std::vector<std::string_view>& fields);

} // namespace nsp::detail
