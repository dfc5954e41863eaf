#include "nsp/detail/delimited.hpp"

#include <charconv>
#include <cmath>

namespace nsp::detail {

std::string_view trim(std::string_view s)
{
    constexpr std::string_view ws = " \t\r\n";
    const auto first = s.find_first_not_of(ws);
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(ws);
    return s.substr(first, last - first + 1);
}

std::vector<Row> split_rows(std::string_view document)
{
    std::vector<Row> rows;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= document.size()) {
        auto eol = document.find('\n', pos);
        if (eol == std::string_view::npos) {
            eol = document.size();
        }
        ++line_no;
        const auto line = trim(document.substr(pos, eol - pos));
        pos = eol + 1;
        if (line.empty() || line.front() == '#') {
            continue;
        }
        Row row{line_no, {}};
        std::size_t start = 0;
        while (true) {
            const auto comma = line.find(',', start);
            if (comma == std::string_view::npos) {
                row.fields.push_back(trim(line.substr(start)));
                break;
            }
            row.fields.push_back(trim(line.substr(start, comma - start)));
            start = comma + 1;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::optional<double> parse_double(std::string_view s)
{
    if (s.empty()) {
        return std::nullopt;
    }
    if (s.front() == '+') {
        s.remove_prefix(1);
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(value)) {
        return std::nullopt;
    }
    return value;
}

std::optional<std::int64_t> parse_int(std::string_view s)
{
    if (s.empty()) {
        return std::nullopt;
    }
    if (s.front() == '+') {
        s.remove_prefix(1);
    }
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        return std::nullopt;
    }
    return value;
}

std::string join_fields(const std::vector<std::string_view>& fields)
{
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i != 0) {
            out += ',';
        }
        out += fields[i];
    }
    return out;
}

} // namespace nsp::detail
