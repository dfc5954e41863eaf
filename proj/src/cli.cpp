#include "nsp/cli.hpp"

#include "nsp/catalog.hpp"
#include "nsp/detail/delimited.hpp"
#include "nsp/preferential.hpp"
#include "nsp/report.hpp"
#include "nsp/sim.hpp"
#include "nsp/table1.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace nsp::cli {

namespace {

using report::json;

enum class OutputMode { Human, Machine };

// Result of one command: the rendered document and the exit status.
struct Outcome {
    std::string document;
    int status = kExitOk;
};

struct SimFlags {
    std::string config_file;
    std::string topology;
    std::string packets;
    std::optional<std::int64_t> packet_size;
    std::optional<double> bus_gbps;
    std::optional<double> suite_gbps;
    std::string suite;
    std::optional<double> forward_crypto_gbps;
    std::optional<double> reverse_crypto_gbps;
    std::optional<std::int64_t> dma_setup_ns;
    std::optional<std::int64_t> key_exchange_ns;
    std::optional<std::int64_t> reconfig_delay_ns;
    std::optional<int> reconfig_after;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

MetricCatalog resolve_catalog(const std::string& flag)
{
    if (!flag.empty()) {
        return load_catalog_file(flag);
    }
    if (const char* env = std::getenv(kCatalogEnv); env != nullptr && *env != '\0') {
        return load_catalog_file(env);
    }
    return default_catalog();
}

json envelope(std::string_view command)
{
    return {{"schema_version", report::kSchemaVersion}, {"command", command}};
}

std::string render(const json& doc)
{
    return doc.dump(2) + "\n";
}

MetricBudget<double> parse_budget(std::string_view text)
{
    MetricBudget<double> budget;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto comma = text.find(',', start);
        if (comma == std::string_view::npos) {
            comma = text.size();
        }
        const auto item = detail::trim(text.substr(start, comma - start));
        start = comma + 1;
        if (item.empty()) {
            continue;
        }
        const auto eq = item.find('=');
        if (eq == std::string_view::npos) {
            throw std::invalid_argument("budget entry '" + std::string(item) + "' is not key=value");
        }
        const auto key = detail::trim(item.substr(0, eq));
        const auto value = detail::parse_double(detail::trim(item.substr(eq + 1)));
        if (!value || *value <= 0.0) {
            throw std::invalid_argument("budget value for '" + std::string(key) + "' must be a positive number");
        }
        if (key == "max_power") {
            budget.max_power = value;
        } else if (key == "min_throughput") {
            budget.min_throughput = value;
        } else if (key == "max_resource") {
            budget.max_resource = value;
        } else {
            throw std::invalid_argument("unknown budget key '" + std::string(key) +
                                        "' (expected max_power, min_throughput or max_resource)");
        }
    }
    return budget;
}

ThroughputComposition parse_composition(const std::string& s)
{
    if (s == "additive") {
        return ThroughputComposition::Additive;
    }
    if (s == "bottleneck") {
        return ThroughputComposition::Bottleneck;
    }
    throw std::invalid_argument("throughput composition must be 'additive' or 'bottleneck'");
}

sim::SimConfig build_sim_config(const SimFlags& f, const std::string& catalog_flag, bool needs_topology)
{
    sim::SimConfig c;
    if (!f.config_file.empty()) {
        json doc;
        try {
            doc = json::parse(read_file(f.config_file));
        } catch (const json::parse_error& e) {
            throw std::invalid_argument("config '" + f.config_file + "' is not valid JSON: " + e.what());
        }
        c = report::sim_config_from_json(doc, c);
    } else if (needs_topology && f.topology.empty()) {
        throw std::invalid_argument("--topology is required (or --config FILE)");
    }
    if (!f.topology.empty()) {
        c.topology = sim::parse_topology(f.topology);
    }
    if (!f.packets.empty()) {
        const auto rows = detail::split_rows(f.packets);
        const auto fwd = rows.size() == 1 && rows[0].fields.size() == 2 ? detail::parse_int(rows[0].fields[0]) : std::nullopt;
        const auto rev = rows.size() == 1 && rows[0].fields.size() == 2 ? detail::parse_int(rows[0].fields[1]) : std::nullopt;
        if (!fwd || !rev) {
            throw std::invalid_argument("--packets expects FORWARD,REVERSE counts");
        }
        c.forward_packets = static_cast<int>(*fwd);
        c.reverse_packets = static_cast<int>(*rev);
    }
    if (f.packet_size) {
        c.packet_size_bits = *f.packet_size;
    }
    if (f.bus_gbps) {
        c.bus_gbps = *f.bus_gbps;
    }
    if (!f.suite.empty()) {
        const auto catalog = resolve_catalog(catalog_flag);
        const auto idx = find_suite(catalog, f.suite);
        if (!idx) {
            throw std::invalid_argument("suite '" + f.suite + "' is not in the catalog");
        }
        const auto space = compose_space<double>(catalog);
        c.suite_gbps = space.cells(space.index((*idx)[0], (*idx)[1], (*idx)[2]), 1);
    }
    if (f.suite_gbps) {
        c.suite_gbps = *f.suite_gbps;
    }
    if (f.forward_crypto_gbps) {
        c.forward_crypto_gbps = f.forward_crypto_gbps;
    }
    if (f.reverse_crypto_gbps) {
        c.reverse_crypto_gbps = f.reverse_crypto_gbps;
    }
    if (f.dma_setup_ns) {
        c.dma_setup_ns = *f.dma_setup_ns;
    }
    if (f.key_exchange_ns) {
        c.key_exchange_ns = *f.key_exchange_ns;
    }
    if (f.reconfig_delay_ns) {
        c.reconfig_delay_ns = *f.reconfig_delay_ns;
    }
    if (f.reconfig_after) {
        c.reconfig_after_packets = *f.reconfig_after;
    }
    sim::validate(c);
    return c;
}

void add_sim_flags(CLI::App* cmd, SimFlags& f, bool with_topology)
{
    cmd->add_option("--config", f.config_file, "JSON simulation config; flags override its fields");
    if (with_topology) {
        cmd->add_option("--topology", f.topology,
                        "dual-interface | split-bus-single-pci | shared-bidirectional-bus");
    }
    cmd->add_option("--packets", f.packets, "FORWARD,REVERSE packet counts");
    cmd->add_option("--packet-size", f.packet_size, "packet size in bits");
    cmd->add_option("--bus-gbps", f.bus_gbps, "bandwidth of each bus/interface");
    cmd->add_option("--suite-gbps", f.suite_gbps, "crypto engine throughput");
    cmd->add_option("--suite", f.suite, "take the crypto throughput from a catalog suite, e.g. DES+MD5+RSA");
    cmd->add_option("--forward-crypto-gbps", f.forward_crypto_gbps, "override for the forward crypto engine");
    cmd->add_option("--reverse-crypto-gbps", f.reverse_crypto_gbps, "override for the reverse crypto engine");
    cmd->add_option("--dma-setup-ns", f.dma_setup_ns, "fixed cost added to each transfer");
    cmd->add_option("--key-exchange-ns", f.key_exchange_ns, "one-time delay before data flows");
    cmd->add_option("--reconfig-delay-ns", f.reconfig_delay_ns, "suite switch cost per crypto engine");
    cmd->add_option("--reconfig-after", f.reconfig_after, "packets processed before the suite switch");
}

} // namespace

int run(int argc, const char* const argv[], std::ostream& out, std::ostream& err)
{
    CLI::App app{"Cipher-suite preferential selection and NSP dataflow simulation"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format = "human";
    std::string out_file;
    app.add_option("--format", format, "human | json")->check(CLI::IsMember({"human", "json"}));
    app.add_option("--out", out_file, "write the report to FILE instead of standard output");

    std::string catalog_flag;

    auto* catalog_cmd = app.add_subcommand("catalog", "catalog utilities");
    catalog_cmd->require_subcommand(1);
    std::string validate_path;
    auto* validate_cmd = catalog_cmd->add_subcommand("validate", "parse and validate a catalog file");
    validate_cmd->add_option("file", validate_path, "catalog file")->required();

    auto* select_cmd = app.add_subcommand("select", "rank all cipher suites for one weight vector");
    std::string weights_text;
    std::string budget_text;
    std::string composition = "additive";
    select_cmd->add_option("--weights", weights_text, "wp,wt,wr summing to 1")->required();
    select_cmd->add_option("--catalog", catalog_flag, "catalog file (default: bundled or $NSP_CATALOG)");
    select_cmd->add_option("--budget", budget_text, "max_power=MW,min_throughput=GBPS,max_resource=SLICES");
    select_cmd->add_option("--throughput-composition", composition, "additive | bottleneck (extension)");

    auto* sweep_cmd = app.add_subcommand("sweep", "run select for every row of a weights file");
    std::string weights_file;
    sweep_cmd->add_option("--weights-file", weights_file, "file with header w_p,w_t,w_r")->required();
    sweep_cmd->add_option("--catalog", catalog_flag, "catalog file (default: bundled or $NSP_CATALOG)");

    auto* table1_cmd =
        app.add_subcommand("reproduce-table1", "sweep the bundled 46 weight rows and diff against the reference table");

    SimFlags sim_flags;
    auto* simulate_cmd = app.add_subcommand("simulate", "simulate one topology");
    add_sim_flags(simulate_cmd, sim_flags, true);
    simulate_cmd->add_option("--catalog", catalog_flag, "catalog used to resolve --suite");

    auto* compare_cmd = app.add_subcommand("compare-topologies", "simulate the same workload on all topologies");
    add_sim_flags(compare_cmd, sim_flags, false);
    compare_cmd->add_option("--catalog", catalog_flag, "catalog used to resolve --suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << " (see --help)\n";
        return kExitError;
    }

    const auto mode = format == "json" ? OutputMode::Machine : OutputMode::Human;
    Outcome outcome;
    try {
        if (validate_cmd->parsed()) {
            const auto catalog = load_catalog_file(validate_path);
            if (mode == OutputMode::Machine) {
                auto doc = envelope("catalog validate");
                doc["file"] = validate_path;
                doc["valid"] = true;
                doc["counts"] = {{"encryption", catalog.encryption.size()},
                                 {"hash", catalog.hash.size()},
                                 {"key_exchange", catalog.key_exchange.size()}};
                outcome.document = render(doc);
            } else {
                outcome.document = "ok: " + std::to_string(catalog.encryption.size()) + " encryption, " +
                                   std::to_string(catalog.hash.size()) + " hash, " +
                                   std::to_string(catalog.key_exchange.size()) + " key exchange\n";
            }
        } else if (select_cmd->parsed()) {
            const auto weights = parse_weights(weights_text);
            const auto catalog = resolve_catalog(catalog_flag);
            const auto mode_compose = parse_composition(composition);
            const auto sel = select<double>(catalog, weights, mode_compose);
            auto doc = envelope("select");
            doc["throughput_composition"] = composition;
            doc["report"] = report::selection_json(catalog, sel);
            std::string text = report::selection_text(catalog, sel);
            if (!budget_text.empty()) {
                const auto budget = parse_budget(budget_text);
                const auto filtered = filter_by_budget(sel, budget);
                doc["budget"] = report::budget_json(catalog, budget, filtered);
                text += "\n" + report::budget_text(catalog, filtered);
                if (std::holds_alternative<BudgetInfeasible<double>>(filtered)) {
                    outcome.status = kExitBudgetInfeasible;
                }
            }
            outcome.document = mode == OutputMode::Machine ? render(doc) : text;
        } else if (sweep_cmd->parsed()) {
            const auto weights = load_weights_file(weights_file);
            const auto catalog = resolve_catalog(catalog_flag);
            const auto reports = sweep<double>(catalog, weights);
            auto doc = envelope("sweep");
            doc["reports"] = json::array();
            std::string text;
            for (std::size_t i = 0; i < reports.size(); ++i) {
                doc["reports"].push_back(report::selection_json(catalog, reports[i]));
                text += "--- row " + std::to_string(i + 1) + "\n" + report::selection_text(catalog, reports[i]) + "\n";
            }
            outcome.document = mode == OutputMode::Machine ? render(doc) : text;
        } else if (table1_cmd->parsed()) {
            const auto diff = reproduce_table1();
            auto doc = envelope("reproduce-table1");
            doc.update(report::table1_json(diff));
            outcome.document = mode == OutputMode::Machine ? render(doc) : report::table1_text(diff);
        } else if (simulate_cmd->parsed()) {
            const auto config = build_sim_config(sim_flags, catalog_flag, true);
            const auto result = sim::run_simulation(config);
            auto doc = envelope("simulate");
            doc.update(report::sim_result_json(result));
            outcome.document = mode == OutputMode::Machine ? render(doc) : report::sim_result_text(result);
        } else if (compare_cmd->parsed()) {
            const auto config = build_sim_config(sim_flags, catalog_flag, false);
            const auto cmp = sim::compare_topologies(config);
            auto doc = envelope("compare-topologies");
            doc.update(report::comparison_json(cmp));
            outcome.document = mode == OutputMode::Machine ? render(doc) : report::comparison_text(cmp);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }

    if (!out_file.empty()) {
        std::ofstream file(out_file, std::ios::binary);
        if (!(file << outcome.document)) {
            err << "error: cannot write '" << out_file << "'\n";
            return kExitError;
        }
    } else {
        out << outcome.document;
    }
    return outcome.status;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    std::vector<const char*> argv;
    argv.push_back("nsptool");
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace nsp::cli
