#include "nsp/table1.hpp"

#include "nsp/detail/delimited.hpp"
#include "nsp/embedded_data.hpp"

#include <cmath>
#include <stdexcept>

namespace nsp {

namespace {

constexpr std::string_view kReferenceHeader = "row,w_p,w_t,w_r,priority,esi_t,best,worst,eligible_percent";

double number(std::string_view field, std::size_t line)
{
    const auto v = detail::parse_double(field);
    if (!v) {
        throw std::invalid_argument("line " + std::to_string(line) + ": malformed number '" + std::string(field) + "'");
    }
    return *v;
}

std::optional<double> esi_of(const MetricCatalog& catalog, const CompositionSpace<double>& space,
                             const WeightVector<double>& w, std::string_view label)
{
    const auto idx = find_suite(catalog, label);
    if (!idx) {
        return std::nullopt;
    }
    const auto row = space.index((*idx)[0], (*idx)[1], (*idx)[2]);
    return esi(space.cells.row(row), space.maxima, w);
}

} // namespace

std::vector<Table1Reference> load_table1_reference(std::string_view document)
{
    const auto rows = detail::split_rows(document);
    if (rows.empty() || detail::join_fields(rows.front().fields) != kReferenceHeader) {
        throw std::invalid_argument("reference table must start with header '" + std::string(kReferenceHeader) + "'");
    }
    std::vector<Table1Reference> out;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& f = rows[r].fields;
        const auto line = rows[r].line;
        if (f.size() != 9) {
            throw std::invalid_argument("line " + std::to_string(line) + ": expected 9 fields");
        }
        const auto row_no = detail::parse_int(f[0]);
        if (!row_no) {
            throw std::invalid_argument("line " + std::to_string(line) + ": malformed row number");
        }
        Table1Reference ref;
        ref.row = static_cast<int>(*row_no);
        ref.weights = {number(f[1], line), number(f[2], line), number(f[3], line)};
        ref.priority = std::string(f[4]);
        ref.esi_t = number(f[5], line);
        ref.best = std::string(f[6]);
        ref.worst = std::string(f[7]);
        ref.eligible_percent = number(f[8], line);
        out.push_back(std::move(ref));
    }
    return out;
}

const std::vector<Table1Reference>& table1_reference()
{
    static const auto rows = load_table1_reference(embedded::table1_reference_csv());
    return rows;
}

Table1Diff reproduce_table1(const MetricCatalog& catalog,
                            const std::vector<WeightVector<double>>& weights,
                            const std::vector<Table1Reference>& reference)
{
    if (weights.size() != reference.size()) {
        throw std::invalid_argument("sweep has " + std::to_string(weights.size()) + " weight rows but reference has " +
                                    std::to_string(reference.size()));
    }
    for (std::size_t r = 0; r < weights.size(); ++r) {
        if (!(weights[r] == reference[r].weights)) {
            throw std::invalid_argument("sweep weights differ from reference at row " + std::to_string(reference[r].row));
        }
    }

    const auto space = compose_space<double>(catalog);
    const auto reports = sweep<double>(catalog, weights);

    Table1Diff diff;
    for (std::size_t r = 0; r < reports.size(); ++r) {
        const auto& ref = reference[r];
        Table1RowDiff d;
        d.reference = ref;
        d.computed = reports[r];
        d.best_computed = suite_label(catalog, d.computed.best);
        d.worst_computed = suite_label(catalog, d.computed.worst);
        d.esi_t_delta = d.computed.esi_t - ref.esi_t;
        d.best_match = same_suite_label(d.best_computed, ref.best);
        d.worst_match = same_suite_label(d.worst_computed, ref.worst);
        d.reference_best_esi = esi_of(catalog, space, ref.weights, ref.best);
        d.reference_worst_esi = esi_of(catalog, space, ref.weights, ref.worst);
        d.pct_delta = d.computed.eligible_percent - ref.eligible_percent;

        diff.max_abs_esi_t_delta = std::max(diff.max_abs_esi_t_delta, std::abs(d.esi_t_delta));
        diff.best_matches += d.best_match;
        diff.worst_matches += d.worst_match;
        diff.pct_within_5 += std::abs(d.pct_delta) <= 5.0;
        diff.rows.push_back(std::move(d));
    }
    return diff;
}

} // namespace nsp
