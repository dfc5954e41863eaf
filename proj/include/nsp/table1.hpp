#pragma once

#include "nsp/catalog.hpp"
#include "nsp/preferential.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nsp {

/// One row of the published preferential-selection table.
struct Table1Reference {
    int row = 0;
    WeightVector<double> weights;
    std::string priority;
    double esi_t = 0.0;
    std::string best;
    std::string worst;
    double eligible_percent = 0.0;
};

std::vector<Table1Reference> load_table1_reference(std::string_view document);
const std::vector<Table1Reference>& table1_reference();

struct Table1RowDiff {
    Table1Reference reference;
    SelectionReport<double> computed;
    std::string best_computed;
    std::string worst_computed;
    double esi_t_delta = 0.0; // computed - reference
    bool best_match = false;
    bool worst_match = false;
    /// Computed index of the reference suite (nullopt if not in the catalog).
    std::optional<double> reference_best_esi;
    std::optional<double> reference_worst_esi;
    double pct_delta = 0.0; // computed - reference
};

struct Table1Diff {
    std::vector<Table1RowDiff> rows;
    double max_abs_esi_t_delta = 0.0;
    int best_matches = 0;
    int worst_matches = 0;
    int pct_within_5 = 0;
};

/// Runs the weight sweep and diffs every row against the reference. The sweep
/// weights and the reference rows must describe the same instances.
Table1Diff reproduce_table1(const MetricCatalog& catalog,
                            const std::vector<WeightVector<double>>& weights,
                            const std::vector<Table1Reference>& reference);

inline Table1Diff reproduce_table1()
{
    return reproduce_table1(default_catalog(), table1_weights(), table1_reference());
}

} // namespace nsp
