#include "nsp/preferential.hpp"

#include "nsp/detail/delimited.hpp"
#include "nsp/embedded_data.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace nsp {

namespace {

WeightVector<double> weights_from_fields(const std::vector<std::string_view>& fields, const std::string& where)
{
    if (fields.size() != 3) {
        throw std::invalid_argument(where + "expected three weights w_p,w_t,w_r");
    }
    std::array<double, 3> w{};
    for (std::size_t i = 0; i < 3; ++i) {
        const auto v = detail::parse_double(fields[i]);
        if (!v) {
            throw std::invalid_argument(where + "malformed weight '" + std::string(fields[i]) + "'");
        }
        w[i] = *v;
    }
    WeightVector<double> out{w[0], w[1], w[2]};
    try {
        validate(out);
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(where + e.what());
    }
    return out;
}

std::string normalize_label(std::string_view s)
{
    std::string out;
    for (char c : s) {
        if (c == '-' || c == '_' || std::isspace(static_cast<unsigned char>(c))) {
            continue;
        }
        out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return out;
}

template <typename List>
std::optional<Eigen::Index> find_name(const List& list, std::string_view name)
{
    const auto key = normalize_label(name);
    for (std::size_t i = 0; i < list.size(); ++i) {
        if (normalize_label(list[i].name) == key) {
            return static_cast<Eigen::Index>(i);
        }
    }
    return std::nullopt;
}

} // namespace

std::string_view to_string(PriorityClass p)
{
    switch (p) {
    case PriorityClass::Equal:
        return "equal";
    case PriorityClass::Single:
        return "single";
    case PriorityClass::Multiple:
        break;
    }
    return "multiple";
}

std::string_view to_string(BudgetBound b)
{
    switch (b) {
    case BudgetBound::MaxPower:
        return "max_power";
    case BudgetBound::MinThroughput:
        return "min_throughput";
    case BudgetBound::MaxResource:
        break;
    }
    return "max_resource";
}

WeightVector<double> parse_weights(std::string_view text)
{
    const auto rows = detail::split_rows(text);
    if (rows.size() != 1) {
        throw std::invalid_argument("expected weights as wp,wt,wr");
    }
    return weights_from_fields(rows.front().fields, "");
}

std::vector<WeightVector<double>> load_weights(std::string_view document)
{
    const auto rows = detail::split_rows(document);
    if (rows.empty() || detail::join_fields(rows.front().fields) != "w_p,w_t,w_r") {
        throw std::invalid_argument("weight document must start with header 'w_p,w_t,w_r'");
    }
    std::vector<WeightVector<double>> out;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        out.push_back(weights_from_fields(rows[r].fields, "line " + std::to_string(rows[r].line) + ": "));
    }
    return out;
}

std::vector<WeightVector<double>> load_weights_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open weights file '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_weights(ss.str());
}

const std::vector<WeightVector<double>>& table1_weights()
{
    static const auto weights = load_weights(embedded::table1_weights_csv());
    return weights;
}

bool same_suite_label(std::string_view a, std::string_view b)
{
    return normalize_label(a) == normalize_label(b);
}

std::optional<std::array<Eigen::Index, 3>> find_suite(const MetricCatalog& catalog, std::string_view label)
{
    const auto first = label.find('+');
    const auto second = first == std::string_view::npos ? first : label.find('+', first + 1);
    if (second == std::string_view::npos || label.find('+', second + 1) != std::string_view::npos) {
        return std::nullopt;
    }
    const auto i = find_name(catalog.encryption, label.substr(0, first));
    const auto j = find_name(catalog.hash, label.substr(first + 1, second - first - 1));
    const auto k = find_name(catalog.key_exchange, label.substr(second + 1));
    if (!i || !j || !k) {
        return std::nullopt;
    }
    return std::array<Eigen::Index, 3>{*i, *j, *k};
}

} // namespace nsp
