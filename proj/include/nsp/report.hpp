#pragma once

#include "nsp/catalog.hpp"
#include "nsp/preferential.hpp"
#include "nsp/sim.hpp"
#include "nsp/table1.hpp"

#include <nlohmann/json.hpp>

#include <string>

// Machine-readable (JSON) and human-readable renderings of every result type.
namespace nsp::report {

inline constexpr int kSchemaVersion = 1;

using json = nlohmann::ordered_json;

json suite_json(const MetricCatalog& catalog, const SuiteComposition<double>& s);
json selection_json(const MetricCatalog& catalog, const SelectionReport<double>& r);
json budget_json(const MetricCatalog& catalog, const MetricBudget<double>& budget, const BudgetOutcome<double>& outcome);
json table1_json(const Table1Diff& diff);
json sim_config_json(const sim::SimConfig& c);
json sim_result_json(const sim::SimResult& r);
json comparison_json(const sim::TopologyComparison& c);

/// Builds a SimConfig from a JSON object; unknown keys are rejected.
/// Keys absent from the document keep the value in `base`.
sim::SimConfig sim_config_from_json(const json& doc, sim::SimConfig base = {});

std::string selection_text(const MetricCatalog& catalog, const SelectionReport<double>& r);
std::string budget_text(const MetricCatalog& catalog, const BudgetOutcome<double>& outcome);
std::string table1_text(const Table1Diff& diff);
std::string sim_result_text(const sim::SimResult& r);
std::string comparison_text(const sim::TopologyComparison& c);

} // namespace nsp::report
