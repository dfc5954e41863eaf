#include "nsp/report.hpp"

#include <fmt/format.h>

#include <stdexcept>

namespace nsp::report {

namespace {

json weights_json(const WeightVector<double>& w)
{
    return {{"w_p", w.power}, {"w_t", w.throughput}, {"w_r", w.resource}};
}

std::string optional_number(const std::optional<double>& v)
{
    return v ? fmt::format("{:.4f}", *v) : std::string("n/a");
}

} // namespace

json suite_json(const MetricCatalog& catalog, const SuiteComposition<double>& s)
{
    return {
        {"suite", suite_label(catalog, s)},
        {"indices", {s.enc_index, s.hash_index, s.kex_index}},
        {"power_mw", s.power},
        {"throughput_gbps", s.throughput},
        {"slices", s.resource},
        {"esi", s.esi},
    };
}

json selection_json(const MetricCatalog& catalog, const SelectionReport<double>& r)
{
    json eligible = json::array();
    for (const auto& s : r.eligible) {
        eligible.push_back(suite_json(catalog, s));
    }
    return {
        {"weights", weights_json(r.weights)},
        {"priority", to_string(r.weights.priority())},
        {"esi_t", r.esi_t},
        {"best", suite_json(catalog, r.best)},
        {"worst", suite_json(catalog, r.worst)},
        {"eligible_percent", r.eligible_percent},
        {"eligible_count", r.eligible.size()},
        {"total_combinations", r.total_cells},
        {"eligible", std::move(eligible)},
    };
}

json budget_json(const MetricCatalog& catalog, const MetricBudget<double>& budget, const BudgetOutcome<double>& outcome)
{
    json bounds = json::object();
    if (budget.max_power) {
        bounds["max_power"] = *budget.max_power;
    }
    if (budget.min_throughput) {
        bounds["min_throughput"] = *budget.min_throughput;
    }
    if (budget.max_resource) {
        bounds["max_resource"] = *budget.max_resource;
    }
    json out = {{"bounds", bounds}};
    if (const auto* admitted = std::get_if<0>(&outcome)) {
        json suites = json::array();
        for (const auto& s : *admitted) {
            suites.push_back(suite_json(catalog, s));
        }
        out["feasible"] = true;
        out["suites"] = std::move(suites);
    } else {
        json relax = json::array();
        for (const auto& r : std::get<1>(outcome).relaxations) {
            relax.push_back({
                {"bound", to_string(r.bound)},
                {"requested", r.requested},
                {"required", r.required},
                {"sufficient", r.sufficient},
                {"witness", suite_json(catalog, r.witness)},
            });
        }
        out["feasible"] = false;
        out["message"] = "no eligible cipher suite fits the budget; increase the metrics budget";
        out["relaxations"] = std::move(relax);
    }
    return out;
}

json table1_json(const Table1Diff& diff)
{
    json rows = json::array();
    json mismatches = json::array();
    for (const auto& d : diff.rows) {
        json row = {
            {"row", d.reference.row},
            {"weights", weights_json(d.reference.weights)},
            {"priority", d.reference.priority},
            {"esi_t_reference", d.reference.esi_t},
            {"esi_t_computed", d.computed.esi_t},
            {"esi_t_delta", d.esi_t_delta},
            {"best_reference", d.reference.best},
            {"best_computed", d.best_computed},
            {"best_match", d.best_match},
            {"best_esi_reference_suite", d.reference_best_esi ? json(*d.reference_best_esi) : json(nullptr)},
            {"best_esi_computed", d.computed.best.esi},
            {"worst_reference", d.reference.worst},
            {"worst_computed", d.worst_computed},
            {"worst_match", d.worst_match},
            {"worst_esi_reference_suite", d.reference_worst_esi ? json(*d.reference_worst_esi) : json(nullptr)},
            {"worst_esi_computed", d.computed.worst.esi},
            {"pct_reference", d.reference.eligible_percent},
            {"pct_computed", d.computed.eligible_percent},
            {"pct_delta", d.pct_delta},
        };
        if (!d.best_match || !d.worst_match || std::abs(d.pct_delta) > 5.0) {
            mismatches.push_back(row);
        }
        rows.push_back(std::move(row));
    }
    return {
        {"summary",
         {
             {"rows", diff.rows.size()},
             {"max_abs_esi_t_delta", diff.max_abs_esi_t_delta},
             {"best_matches", diff.best_matches},
             {"worst_matches", diff.worst_matches},
             {"pct_within_5", diff.pct_within_5},
         }},
        {"rows", std::move(rows)},
        {"mismatches", std::move(mismatches)},
    };
}

json sim_config_json(const sim::SimConfig& c)
{
    json out = {
        {"topology", sim::to_string(c.topology)},
        {"packet_size_bits", c.packet_size_bits},
        {"forward_packets", c.forward_packets},
        {"reverse_packets", c.reverse_packets},
        {"bus_gbps", c.bus_gbps},
        {"suite_gbps", c.suite_gbps},
        {"forward_crypto_gbps", c.forward_crypto_gbps ? json(*c.forward_crypto_gbps) : json(nullptr)},
        {"reverse_crypto_gbps", c.reverse_crypto_gbps ? json(*c.reverse_crypto_gbps) : json(nullptr)},
        {"dma_setup_ns", c.dma_setup_ns},
        {"key_exchange_ns", c.key_exchange_ns},
        {"reconfig_delay_ns", c.reconfig_delay_ns},
        {"reconfig_after_packets", c.reconfig_after_packets},
    };
    return out;
}

sim::SimConfig sim_config_from_json(const json& doc, sim::SimConfig base)
{
    if (!doc.is_object()) {
        throw std::invalid_argument("simulation config must be a JSON object");
    }
    auto c = base;
    for (const auto& [key, value] : doc.items()) {
        try {
            if (key == "topology") {
                c.topology = sim::parse_topology(value.get<std::string>());
            } else if (key == "packet_size_bits") {
                c.packet_size_bits = value.get<std::int64_t>();
            } else if (key == "forward_packets") {
                c.forward_packets = value.get<int>();
            } else if (key == "reverse_packets") {
                c.reverse_packets = value.get<int>();
            } else if (key == "bus_gbps") {
                c.bus_gbps = value.get<double>();
            } else if (key == "suite_gbps") {
                c.suite_gbps = value.get<double>();
            } else if (key == "forward_crypto_gbps") {
                c.forward_crypto_gbps = value.is_null() ? std::nullopt : std::optional(value.get<double>());
            } else if (key == "reverse_crypto_gbps") {
                c.reverse_crypto_gbps = value.is_null() ? std::nullopt : std::optional(value.get<double>());
            } else if (key == "dma_setup_ns") {
                c.dma_setup_ns = value.get<sim::Nanos>();
            } else if (key == "key_exchange_ns") {
                c.key_exchange_ns = value.get<sim::Nanos>();
            } else if (key == "reconfig_delay_ns") {
                c.reconfig_delay_ns = value.get<sim::Nanos>();
            } else if (key == "reconfig_after_packets") {
                c.reconfig_after_packets = value.get<int>();
            } else {
                throw std::invalid_argument("unknown simulation config key '" + key + "'");
            }
        } catch (const json::exception& e) {
            throw std::invalid_argument("bad value for simulation config key '" + key + "': " + e.what());
        }
    }
    return c;
}

json sim_result_json(const sim::SimResult& r)
{
    json events = json::array();
    for (const auto& e : r.events) {
        events.push_back({
            {"packet_id", e.packet_id},
            {"direction", sim::to_string(e.direction)},
            {"stage", sim::to_string(e.stage)},
            {"resource", e.resource},
            {"start_ns", e.start},
            {"end_ns", e.end},
        });
    }
    json resources = json::array();
    for (const auto& u : r.resources) {
        resources.push_back({{"name", u.name}, {"busy_ns", u.busy_ns}, {"utilization", u.utilization}});
    }
    json latencies = json::array();
    for (const auto& l : r.latencies) {
        latencies.push_back(
            {{"direction", sim::to_string(l.direction)}, {"packet_id", l.packet_id}, {"latency_ns", l.latency}});
    }
    json reconfigs = json::array();
    for (const auto& w : r.reconfigs) {
        reconfigs.push_back({{"resource", w.resource}, {"start_ns", w.start}, {"end_ns", w.end}});
    }
    return {
        {"config", sim_config_json(r.config)},
        {"makespan_ns", r.makespan},
        {"resources", std::move(resources)},
        {"latencies", std::move(latencies)},
        {"reconfigs", std::move(reconfigs)},
        {"events", std::move(events)},
    };
}

json comparison_json(const sim::TopologyComparison& c)
{
    json summary = json::array();
    for (auto t : c.ordering) {
        const auto& r = c.results[static_cast<std::size_t>(t)];
        summary.push_back({{"topology", sim::to_string(t)}, {"makespan_ns", r.makespan}});
    }
    json results = json::array();
    for (const auto& r : c.results) {
        results.push_back(sim_result_json(r));
    }
    return {{"summary", std::move(summary)}, {"results", std::move(results)}};
}

std::string selection_text(const MetricCatalog& catalog, const SelectionReport<double>& r)
{
    std::string out;
    out += fmt::format("weights  w_p={} w_t={} w_r={}  ({} priority)\n", r.weights.power, r.weights.throughput,
                       r.weights.resource, to_string(r.weights.priority()));
    out += fmt::format("ESI_t    {:.4f}\n", r.esi_t);
    out += fmt::format("best     {}  (ESI {:.4f})\n", suite_label(catalog, r.best), r.best.esi);
    out += fmt::format("worst    {}  (ESI {:.4f})\n", suite_label(catalog, r.worst), r.worst.esi);
    out += fmt::format("eligible {} of {} ({:.1f}%)\n\n", r.eligible.size(), r.total_cells, r.eligible_percent);
    out += fmt::format("{:<24} {:>10} {:>10} {:>8} {:>8}\n", "suite", "power_mw", "tput_gbps", "slices", "ESI");
    for (const auto& s : r.eligible) {
        out += fmt::format("{:<24} {:>10.1f} {:>10.3f} {:>8.0f} {:>8.4f}\n", suite_label(catalog, s), s.power,
                           s.throughput, s.resource, s.esi);
    }
    return out;
}

std::string budget_text(const MetricCatalog& catalog, const BudgetOutcome<double>& outcome)
{
    std::string out;
    if (const auto* admitted = std::get_if<0>(&outcome)) {
        out += fmt::format("within budget: {} suite(s)\n", admitted->size());
        for (const auto& s : *admitted) {
            out += fmt::format("  {:<24} {:>10.1f} mW {:>8.3f} Gbps {:>8.0f} slices  ESI {:.4f}\n",
                               suite_label(catalog, s), s.power, s.throughput, s.resource, s.esi);
        }
        return out;
    }
    out += "no eligible cipher suite fits the budget; increase the metrics budget:\n";
    for (const auto& r : std::get<1>(outcome).relaxations) {
        out += fmt::format("  {} {} -> {} ({}{})\n", to_string(r.bound), r.requested, r.required,
                           suite_label(catalog, r.witness),
                           r.sufficient ? "" : "; other bounds must also be relaxed");
    }
    return out;
}

std::string table1_text(const Table1Diff& diff)
{
    std::string out;
    out += fmt::format("{:>3} {:>5} {:>5} {:>5} | {:>7} {:>7} {:>7} | {:<20} {:<20} | {:<20} {:<20} | {:>5} {:>5}\n",
                       "row", "w_p", "w_t", "w_r", "ESI_t", "ref", "delta", "best", "ref best", "worst",
                       "ref worst", "%", "ref");
    for (const auto& d : diff.rows) {
        const auto& ref = d.reference;
        out += fmt::format(
            "{:>3} {:>5} {:>5} {:>5} | {:>7.4f} {:>7.4f} {:>+7.4f} | {:<20} {:<19}{} | {:<20} {:<19}{} | {:>5.1f} {:>5.1f}\n",
            ref.row, ref.weights.power, ref.weights.throughput, ref.weights.resource, d.computed.esi_t, ref.esi_t,
            d.esi_t_delta, d.best_computed, ref.best, d.best_match ? ' ' : '*', d.worst_computed, ref.worst,
            d.worst_match ? ' ' : '*', d.computed.eligible_percent, ref.eligible_percent);
    }
    out += fmt::format("\nmax |delta ESI_t| = {:.4f}\n", diff.max_abs_esi_t_delta);
    out += fmt::format("best matches       {}/{}\n", diff.best_matches, diff.rows.size());
    out += fmt::format("worst matches      {}/{}\n", diff.worst_matches, diff.rows.size());
    out += fmt::format("eligible % within 5 points: {}/{}\n", diff.pct_within_5, diff.rows.size());
    for (const auto& d : diff.rows) {
        if (!d.best_match) {
            out += fmt::format("row {}: best {} (ESI {:.4f}) vs reference {} (ESI {})\n", d.reference.row, d.best_computed,
                               d.computed.best.esi, d.reference.best, optional_number(d.reference_best_esi));
        }
        if (!d.worst_match) {
            out += fmt::format("row {}: worst {} (ESI {:.4f}) vs reference {} (ESI {})\n", d.reference.row, d.worst_computed,
                               d.computed.worst.esi, d.reference.worst, optional_number(d.reference_worst_esi));
        }
        if (std::abs(d.pct_delta) > 5.0) {
            out += fmt::format("row {}: eligible {:.1f}% vs reference {:.1f}%\n", d.reference.row, d.computed.eligible_percent,
                               d.reference.eligible_percent);
        }
    }
    return out;
}

std::string sim_result_text(const sim::SimResult& r)
{
    std::string out;
    out += fmt::format("topology {}  packets {}/{}  makespan {} ns\n", sim::to_string(r.config.topology),
                       r.config.forward_packets, r.config.reverse_packets, r.makespan);
    out += fmt::format("{:<10} {:>10} {:>8}\n", "resource", "busy_ns", "util");
    for (const auto& u : r.resources) {
        out += fmt::format("{:<10} {:>10} {:>8.3f}\n", u.name, u.busy_ns, u.utilization);
    }
    out += fmt::format("\n{:<8} {:>4} {:<17} {:<10} {:>10} {:>10}\n", "dir", "pkt", "stage", "resource", "start",
                       "end");
    for (const auto& e : r.events) {
        out += fmt::format("{:<8} {:>4} {:<17} {:<10} {:>10} {:>10}\n", sim::to_string(e.direction), e.packet_id,
                           sim::to_string(e.stage), e.resource, e.start, e.end);
    }
    return out;
}

std::string comparison_text(const sim::TopologyComparison& c)
{
    std::string out = fmt::format("{:<26} {:>12}\n", "topology", "makespan_ns");
    for (auto t : c.ordering) {
        out += fmt::format("{:<26} {:>12}\n", sim::to_string(t), c.results[static_cast<std::size_t>(t)].makespan);
    }
    return out;
}

} // namespace nsp::report
