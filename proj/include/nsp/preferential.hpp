#pragma once

#include "nsp/catalog.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace nsp {

/// Weights are accepted when they sum to one within this tolerance. It admits
/// three-decimal roundings such as 0.333/0.333/0.333.
inline constexpr double kWeightSumTolerance = 1.5e-3;

enum class PriorityClass { Equal, Single, Multiple };

std::string_view to_string(PriorityClass p);

template <typename Scalar = double>
struct WeightVector {
    Scalar power{};
    Scalar throughput{};
    Scalar resource{};

    Eigen::Array<Scalar, 1, 3> array() const { return {power, throughput, resource}; }

    PriorityClass priority() const
    {
        if (power == throughput && throughput == resource) {
            return PriorityClass::Equal;
        }
        const int nonzero = (power != Scalar(0)) + (throughput != Scalar(0)) + (resource != Scalar(0));
        return nonzero == 1 ? PriorityClass::Single : PriorityClass::Multiple;
    }

    template <typename Other>
    WeightVector<Other> cast() const
    {
        return {Other(power), Other(throughput), Other(resource)};
    }

    friend bool operator==(const WeightVector&, const WeightVector&) = default;
};

/// Throws std::invalid_argument on negative, non-finite, or non-normalized weights.
template <typename Scalar>
void validate(const WeightVector<Scalar>& w)
{
    const auto a = w.array();
    if (!a.isFinite().all() || (a < Scalar(0)).any()) {
        throw std::invalid_argument("weights must be finite and non-negative");
    }
    using std::abs;
    if (abs(a.sum() - Scalar(1)) > Scalar(kWeightSumTolerance)) {
        throw std::invalid_argument("weights must sum to 1 (got " + std::to_string(double(a.sum())) + ")");
    }
}

/// Parses "wp,wt,wr" and validates it.
WeightVector<double> parse_weights(std::string_view text);

/// Reads a weight document (header `w_p,w_t,w_r`, one vector per row).
std::vector<WeightVector<double>> load_weights(std::string_view document);
std::vector<WeightVector<double>> load_weights_file(const std::string& path);

/// The 46 weight vectors of the published preferential-selection table, verbatim.
const std::vector<WeightVector<double>>& table1_weights();

/// How per-algorithm throughputs combine into a suite throughput. Additive is
/// the reference behavior. Bottleneck (minimum of the three) is an extension.
enum class ThroughputComposition { Additive, Bottleneck };

/// Rows of E, H or K: columns are power, throughput, resource.
template <typename Scalar = double>
Eigen::Array<Scalar, Eigen::Dynamic, 3> metric_matrix(const std::vector<AlgorithmMetrics>& algorithms)
{
    Eigen::Array<Scalar, Eigen::Dynamic, 3> m(static_cast<Eigen::Index>(algorithms.size()), 3);
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        const auto& a = algorithms[static_cast<std::size_t>(r)];
        m.row(r) << Scalar(a.power_mw), Scalar(a.throughput_gbps), Scalar(a.slices);
    }
    return m;
}

/// All n*m*l suite cells with their composed power, throughput and resource.
/// Row (i*m + j)*l + k holds encryption i, hash j, key exchange k, so row
/// order is lexicographic (i, j, k).
template <typename Scalar = double>
struct CompositionSpace {
    using Cells = Eigen::Array<Scalar, Eigen::Dynamic, 3>;
    using Row = Eigen::Array<Scalar, 1, 3>;

    Eigen::Index n = 0;
    Eigen::Index m = 0;
    Eigen::Index l = 0;
    Cells cells;
    Row maxima;
    Row averages;

    Eigen::Index size() const { return cells.rows(); }
    Eigen::Index index(Eigen::Index i, Eigen::Index j, Eigen::Index k) const { return (i * m + j) * l + k; }
    std::array<Eigen::Index, 3> unravel(Eigen::Index row) const { return {row / (m * l), (row / l) % m, row % l}; }
};

template <typename Scalar = double>
CompositionSpace<Scalar> compose_space(const MetricCatalog& catalog,
                                       ThroughputComposition mode = ThroughputComposition::Additive)
{
    validate(catalog);
    const auto enc = metric_matrix<Scalar>(catalog.encryption);
    const auto hash = metric_matrix<Scalar>(catalog.hash);
    const auto kex = metric_matrix<Scalar>(catalog.key_exchange);

    CompositionSpace<Scalar> space;
    space.n = enc.rows();
    space.m = hash.rows();
    space.l = kex.rows();
    space.cells.resize(space.n * space.m * space.l, 3);
    for (Eigen::Index i = 0; i < space.n; ++i) {
        for (Eigen::Index j = 0; j < space.m; ++j) {
            for (Eigen::Index k = 0; k < space.l; ++k) {
                auto cell = space.cells.row(space.index(i, j, k));
                cell = enc.row(i) + hash.row(j) + kex.row(k);
                if (mode == ThroughputComposition::Bottleneck) {
                    cell(1) = std::min({enc(i, 1), hash(j, 1), kex(k, 1)});
                }
            }
        }
    }
    space.maxima = space.cells.colwise().maxCoeff();
    space.averages = space.cells.colwise().mean();
    return space;
}

/// Weighted normalized index of one (power, throughput, resource) row.
template <typename Derived, typename Scalar>
Scalar esi(const Eigen::ArrayBase<Derived>& metrics,
           const Eigen::Array<Scalar, 1, 3>& maxima,
           const WeightVector<Scalar>& w)
{
    const Eigen::Array<Scalar, 1, 3> normalized = metrics / maxima;
    return w.power * (Scalar(1) - normalized(0)) + w.throughput * normalized(1) +
           w.resource * (Scalar(1) - normalized(2));
}

/// Index value of every cell, in cell order.
template <typename Scalar>
Eigen::Array<Scalar, Eigen::Dynamic, 1> esi_values(const CompositionSpace<Scalar>& space, const WeightVector<Scalar>& w)
{
    const typename CompositionSpace<Scalar>::Cells normalized = space.cells.rowwise() / space.maxima;
    return w.power * (Scalar(1) - normalized.col(0)) + w.throughput * normalized.col(1) +
           w.resource * (Scalar(1) - normalized.col(2));
}

/// Unweighted form: (1 - P/Pmax) + T/Tmax + (1 - R/Rmax).
template <typename Scalar>
Eigen::Array<Scalar, Eigen::Dynamic, 1> unweighted_esi_values(const CompositionSpace<Scalar>& space)
{
    return esi_values(space, WeightVector<Scalar>{Scalar(1), Scalar(1), Scalar(1)});
}

/// Cut-off: the index evaluated at the average composed metrics.
template <typename Scalar>
Scalar esi_threshold(const CompositionSpace<Scalar>& space, const WeightVector<Scalar>& w)
{
    return esi(space.averages, space.maxima, w);
}

template <typename Scalar = double>
struct SuiteComposition {
    Eigen::Index enc_index = 0;
    Eigen::Index hash_index = 0;
    Eigen::Index kex_index = 0;
    Scalar power{};
    Scalar throughput{};
    Scalar resource{};
    Scalar esi{};

    friend bool operator==(const SuiteComposition&, const SuiteComposition&) = default;
};

template <typename Scalar>
SuiteComposition<Scalar> suite_at(const CompositionSpace<Scalar>& space, Eigen::Index row, Scalar esi_value)
{
    const auto [i, j, k] = space.unravel(row);
    return {i, j, k, space.cells(row, 0), space.cells(row, 1), space.cells(row, 2), esi_value};
}

/// "AES+SHA-256+RSA" style label using catalog names.
template <typename Scalar>
std::string suite_label(const MetricCatalog& catalog, const SuiteComposition<Scalar>& s)
{
    return catalog.encryption.at(static_cast<std::size_t>(s.enc_index)).name + "+" +
           catalog.hash.at(static_cast<std::size_t>(s.hash_index)).name + "+" +
           catalog.key_exchange.at(static_cast<std::size_t>(s.kex_index)).name;
}

/// Compares two "+"-joined suite labels ignoring case, '-' and '_', so that
/// "AES+SHA-256+DH_RSA" matches "AES+SHA256+DH_RSA".
bool same_suite_label(std::string_view a, std::string_view b);

/// Finds the cell whose label matches, or nullopt.
std::optional<std::array<Eigen::Index, 3>> find_suite(const MetricCatalog& catalog, std::string_view label);

template <typename Scalar = double>
struct SelectionReport {
    WeightVector<Scalar> weights;
    Scalar esi_t{};
    std::vector<SuiteComposition<Scalar>> eligible; // esi descending, ties by (i, j, k)
    SuiteComposition<Scalar> best;
    SuiteComposition<Scalar> worst;
    Scalar eligible_percent{};
    Eigen::Index total_cells = 0;
};

template <typename Scalar>
SelectionReport<Scalar> select(const CompositionSpace<Scalar>& space, const WeightVector<Scalar>& w)
{
    validate(w);
    const auto values = esi_values(space, w);
    SelectionReport<Scalar> report;
    report.weights = w;
    report.esi_t = esi_threshold(space, w);
    report.total_cells = space.size();

    // maxCoeff/minCoeff return the first extreme index, which is the lowest (i, j, k).
    Eigen::Index best_row = 0;
    Eigen::Index worst_row = 0;
    values.maxCoeff(&best_row);
    values.minCoeff(&worst_row);
    report.best = suite_at(space, best_row, values(best_row));
    report.worst = suite_at(space, worst_row, values(worst_row));

    for (Eigen::Index r = 0; r < space.size(); ++r) {
        if (values(r) >= report.esi_t) {
            report.eligible.push_back(suite_at(space, r, values(r)));
        }
    }
    std::stable_sort(report.eligible.begin(), report.eligible.end(),
                     [](const auto& a, const auto& b) { return a.esi > b.esi; });
    report.eligible_percent = Scalar(100) * Scalar(report.eligible.size()) / Scalar(space.size());
    return report;
}

template <typename Scalar = double>
SelectionReport<Scalar> select(const MetricCatalog& catalog, const WeightVector<Scalar>& w,
                               ThroughputComposition mode = ThroughputComposition::Additive)
{
    return select(compose_space<Scalar>(catalog, mode), w);
}

template <typename Scalar = double>
std::vector<SelectionReport<Scalar>> sweep(const MetricCatalog& catalog, std::span<const WeightVector<Scalar>> weights,
                                           ThroughputComposition mode = ThroughputComposition::Additive)
{
    std::vector<SelectionReport<Scalar>> reports;
    if (weights.empty()) {
        return reports;
    }
    const auto space = compose_space<Scalar>(catalog, mode);
    reports.reserve(weights.size());
    for (const auto& w : weights) {
        reports.push_back(select(space, w));
    }
    return reports;
}

/// Upper/lower bounds a user places on the composed suite metrics.
template <typename Scalar = double>
struct MetricBudget {
    std::optional<Scalar> max_power;
    std::optional<Scalar> min_throughput;
    std::optional<Scalar> max_resource;

    bool empty() const { return !max_power && !min_throughput && !max_resource; }
};

enum class BudgetBound { MaxPower, MinThroughput, MaxResource };

std::string_view to_string(BudgetBound b);

/// How far one bound has to move to admit at least one eligible suite.
/// `required` is the loosest-necessary value of the bound with the other bounds
/// held fixed. When no eligible suite satisfies the other bounds either,
/// `sufficient` is false and `required` is taken over all eligible suites.
template <typename Scalar = double>
struct BudgetRelaxation {
    BudgetBound bound = BudgetBound::MaxPower;
    Scalar requested{};
    Scalar required{};
    bool sufficient = true;
    SuiteComposition<Scalar> witness;
};

template <typename Scalar = double>
struct BudgetInfeasible {
    std::vector<BudgetRelaxation<Scalar>> relaxations;
};

template <typename Scalar = double>
using BudgetOutcome = std::variant<std::vector<SuiteComposition<Scalar>>, BudgetInfeasible<Scalar>>;

namespace detail {

template <typename Scalar>
bool within(const SuiteComposition<Scalar>& s, BudgetBound b, Scalar v)
{
    switch (b) {
    case BudgetBound::MaxPower:
        return s.power <= v;
    case BudgetBound::MinThroughput:
        return s.throughput >= v;
    case BudgetBound::MaxResource:
        break;
    }
    return s.resource <= v;
}

template <typename Scalar>
Scalar metric_of(const SuiteComposition<Scalar>& s, BudgetBound b)
{
    switch (b) {
    case BudgetBound::MaxPower:
        return s.power;
    case BudgetBound::MinThroughput:
        return s.throughput;
    case BudgetBound::MaxResource:
        break;
    }
    return s.resource;
}

} // namespace detail

/// Keeps the eligible suites that fit the budget, in report order. Throws
/// std::invalid_argument when the budget sets no bound at all.
template <typename Scalar>
BudgetOutcome<Scalar> filter_by_budget(const SelectionReport<Scalar>& report, const MetricBudget<Scalar>& budget)
{
    if (budget.empty()) {
        throw std::invalid_argument("budget sets no bound");
    }
    std::vector<std::pair<BudgetBound, Scalar>> bounds;
    if (budget.max_power) {
        bounds.emplace_back(BudgetBound::MaxPower, *budget.max_power);
    }
    if (budget.min_throughput) {
        bounds.emplace_back(BudgetBound::MinThroughput, *budget.min_throughput);
    }
    if (budget.max_resource) {
        bounds.emplace_back(BudgetBound::MaxResource, *budget.max_resource);
    }

    const auto fits = [&](const SuiteComposition<Scalar>& s, std::optional<BudgetBound> skip) {
        return std::all_of(bounds.begin(), bounds.end(), [&](const auto& b) {
            return (skip && *skip == b.first) || detail::within(s, b.first, b.second);
        });
    };

    std::vector<SuiteComposition<Scalar>> admitted;
    std::copy_if(report.eligible.begin(), report.eligible.end(), std::back_inserter(admitted),
                 [&](const auto& s) { return fits(s, std::nullopt); });
    if (!admitted.empty()) {
        return admitted;
    }

    BudgetInfeasible<Scalar> infeasible;
    for (const auto& [bound, value] : bounds) {
        const auto better = [bound = bound](const auto& a, const auto& b) {
            return bound == BudgetBound::MinThroughput ? detail::metric_of(a, bound) > detail::metric_of(b, bound)
                                                       : detail::metric_of(a, bound) < detail::metric_of(b, bound);
        };
        const SuiteComposition<Scalar>* pick = nullptr;
        bool sufficient = true;
        for (const auto& s : report.eligible) {
            if (fits(s, bound) && (!pick || better(s, *pick))) {
                pick = &s;
            }
        }
        if (!pick) {
            sufficient = false;
            for (const auto& s : report.eligible) {
                if (!pick || better(s, *pick)) {
                    pick = &s;
                }
            }
        }
        if (pick && !detail::within(*pick, bound, value)) {
            infeasible.relaxations.push_back({bound, value, detail::metric_of(*pick, bound), sufficient, *pick});
        }
    }
    return infeasible;
}

} // namespace nsp
