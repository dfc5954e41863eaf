#include "nsp/catalog.hpp"

#include "nsp/detail/delimited.hpp"
#include "nsp/embedded_data.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace nsp {

namespace {

constexpr std::array kClassNames{
    std::string_view{"encryption"},
    std::string_view{"hash"},
    std::string_view{"key_exchange"},
};

constexpr std::array kAllClasses{
    AlgorithmClass::Encryption,
    AlgorithmClass::Hash,
    AlgorithmClass::KeyExchange,
};

std::string row_error(std::size_t line, const std::string& msg)
{
    return "line " + std::to_string(line) + ": " + msg;
}

std::string shortest(double v)
{
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

// Metric checks shared by file ingestion and in-memory validation.
void check_metrics(const AlgorithmMetrics& a, std::size_t line)
{
    const auto fail = [&](const std::string& what) {
        throw CatalogError(CatalogError::Kind::Validation, line,
                           row_error(line, std::string(to_string(a.algorithm_class)) + " '" + a.name + "': " + what));
    };
    if (a.name.empty()) {
        throw CatalogError(CatalogError::Kind::Validation, line, row_error(line, "empty algorithm name"));
    }
    if (!(a.power_mw > 0.0)) {
        fail("power_mw must be > 0");
    }
    if (!(a.throughput_gbps > 0.0)) {
        fail("throughput_gbps must be > 0");
    }
    if (a.slices <= 0) {
        fail("slices must be > 0");
    }
    if (!(a.critical_path_ns > 0.0)) {
        fail("critical_path_ns must be > 0");
    }
}

} // namespace

std::string_view to_string(AlgorithmClass c)
{
    return kClassNames[static_cast<std::size_t>(c)];
}

AlgorithmClass parse_algorithm_class(std::string_view s)
{
    for (auto c : kAllClasses) {
        if (to_string(c) == s) {
            return c;
        }
    }
    throw std::invalid_argument("unknown algorithm class '" + std::string(s) + "'");
}

CatalogError::CatalogError(Kind kind, std::size_t line, const std::string& what)
    : std::runtime_error(what), kind_(kind), line_(line)
{
}

const std::vector<AlgorithmMetrics>& MetricCatalog::list(AlgorithmClass c) const
{
    switch (c) {
    case AlgorithmClass::Encryption:
        return encryption;
    case AlgorithmClass::Hash:
        return hash;
    case AlgorithmClass::KeyExchange:
        break;
    }
    return key_exchange;
}

std::vector<AlgorithmMetrics>& MetricCatalog::list(AlgorithmClass c)
{
    return const_cast<std::vector<AlgorithmMetrics>&>(std::as_const(*this).list(c));
}

MetricCatalog load_catalog(std::string_view document)
{
    using Kind = CatalogError::Kind;
    const auto rows = detail::split_rows(document);
    if (rows.empty()) {
        throw CatalogError(Kind::Parse, 0, "empty catalog document (missing header)");
    }
    if (detail::join_fields(rows.front().fields) != kCatalogHeader) {
        throw CatalogError(Kind::Parse, rows.front().line,
                           row_error(rows.front().line, "expected header '" + std::string(kCatalogHeader) + "'"));
    }

    MetricCatalog catalog;
    std::set<std::pair<AlgorithmClass, std::string>> seen;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        const auto& f = row.fields;
        if (f.size() != 6) {
            throw CatalogError(Kind::Parse, row.line,
                               row_error(row.line, "expected 6 fields, got " + std::to_string(f.size())));
        }
        AlgorithmMetrics a;
        try {
            a.algorithm_class = parse_algorithm_class(f[0]);
        } catch (const std::invalid_argument& e) {
            throw CatalogError(Kind::Parse, row.line, row_error(row.line, e.what()));
        }
        a.name = std::string(f[1]);

        const auto real = [&](std::string_view field, const char* column) {
            const auto v = detail::parse_double(field);
            if (!v) {
                throw CatalogError(Kind::Parse, row.line,
                                   row_error(row.line, std::string("malformed ") + column + " '" + std::string(field) + "'"));
            }
            return *v;
        };
        a.power_mw = real(f[2], "power_mw");
        a.throughput_gbps = real(f[3], "throughput_gbps");
        const auto slices = detail::parse_int(f[4]);
        if (!slices) {
            throw CatalogError(Kind::Parse, row.line,
                               row_error(row.line, "malformed slices '" + std::string(f[4]) + "' (integer expected)"));
        }
        a.slices = *slices;
        a.critical_path_ns = real(f[5], "critical_path_ns");

        check_metrics(a, row.line);
        if (!seen.emplace(a.algorithm_class, a.name).second) {
            throw CatalogError(Kind::Validation, row.line,
                               row_error(row.line, "duplicate " + std::string(to_string(a.algorithm_class)) + " name '" + a.name + "'"));
        }
        catalog.list(a.algorithm_class).push_back(std::move(a));
    }

    for (auto c : kAllClasses) {
        if (catalog.list(c).empty()) {
            throw CatalogError(Kind::Validation, 0, "catalog has no " + std::string(to_string(c)) + " rows");
        }
    }
    return catalog;
}

MetricCatalog load_catalog_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open catalog file '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_catalog(ss.str());
}

void validate(const MetricCatalog& catalog)
{
    for (auto c : kAllClasses) {
        const auto& items = catalog.list(c);
        if (items.empty()) {
            throw CatalogError(CatalogError::Kind::Validation, 0,
                               "catalog has no " + std::string(to_string(c)) + " rows");
        }
        std::set<std::string> names;
        for (std::size_t i = 0; i < items.size(); ++i) {
            const auto& a = items[i];
            if (a.algorithm_class != c) {
                throw CatalogError(CatalogError::Kind::Validation, 0,
                                   "'" + a.name + "' is listed under " + std::string(to_string(c)) +
                                       " but tagged " + std::string(to_string(a.algorithm_class)));
            }
            check_metrics(a, 0);
            if (!names.insert(a.name).second) {
                throw CatalogError(CatalogError::Kind::Validation, 0,
                                   "duplicate " + std::string(to_string(c)) + " name '" + a.name + "'");
            }
        }
    }
}

std::string serialize_catalog(const MetricCatalog& catalog)
{
    std::string out(kCatalogHeader);
    out += '\n';
    for (auto c : kAllClasses) {
        for (const auto& a : catalog.list(c)) {
            out += to_string(c);
            out += ',' + a.name;
            out += ',' + shortest(a.power_mw);
            out += ',' + shortest(a.throughput_gbps);
            out += ',' + std::to_string(a.slices);
            out += ',' + shortest(a.critical_path_ns);
            out += '\n';
        }
    }
    return out;
}

const MetricCatalog& default_catalog()
{
    static const MetricCatalog catalog = load_catalog(embedded::default_catalog_csv());
    return catalog;
}

} // namespace nsp
