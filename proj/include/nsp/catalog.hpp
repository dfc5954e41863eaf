#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nsp {

enum class AlgorithmClass { Encryption, Hash, KeyExchange };

std::string_view to_string(AlgorithmClass c);
AlgorithmClass parse_algorithm_class(std::string_view s);

/// One measured row: power in mW, throughput in Gbps, resource in FPGA slices.
/// The critical path is carried along but no scoring uses it.
struct AlgorithmMetrics {
    std::string name;
    AlgorithmClass algorithm_class = AlgorithmClass::Encryption;
    double power_mw = 0.0;
    double throughput_gbps = 0.0;
    std::int64_t slices = 0;
    double critical_path_ns = 0.0;

    friend bool operator==(const AlgorithmMetrics&, const AlgorithmMetrics&) = default;
};

/// The three per-class algorithm lists. List order is the row index used by
/// every composition (encryption i, hash j, key exchange k).
struct MetricCatalog {
    std::vector<AlgorithmMetrics> encryption;
    std::vector<AlgorithmMetrics> hash;
    std::vector<AlgorithmMetrics> key_exchange;

    const std::vector<AlgorithmMetrics>& list(AlgorithmClass c) const;
    std::vector<AlgorithmMetrics>& list(AlgorithmClass c);

    friend bool operator==(const MetricCatalog&, const MetricCatalog&) = default;
};

class CatalogError : public std::runtime_error {
public:
    enum class Kind { Parse, Validation };

    CatalogError(Kind kind, std::size_t line, const std::string& what);

    Kind kind() const noexcept { return kind_; }
    /// 1-based line of the offending row, 0 when the failure is not tied to one row.
    std::size_t line() const noexcept { return line_; }

private:
    Kind kind_;
    std::size_t line_;
};

inline constexpr std::string_view kCatalogHeader =
    "class,name,power_mw,throughput_gbps,slices,critical_path_ns";

/// Parses and validates a catalog document. Throws CatalogError.
MetricCatalog load_catalog(std::string_view document);
MetricCatalog load_catalog_file(const std::string& path);

/// Checks the catalog invariants (positive metrics, unique names per class,
/// non-empty class lists, matching class tags). Throws CatalogError.
void validate(const MetricCatalog& catalog);

/// Writes the catalog in the same delimited format load_catalog reads.
std::string serialize_catalog(const MetricCatalog& catalog);

/// The 7 + 3 + 3 catalog shipped with the project.
const MetricCatalog& default_catalog();

} // namespace nsp
