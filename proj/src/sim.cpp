#include "nsp/sim.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <queue>
#include <stdexcept>
#include <tuple>

namespace nsp::sim {

namespace {

constexpr std::array<Stage, kStageCount> kStages{
    Stage::Ingress, Stage::WriteDma, Stage::Crypto, Stage::ReadDma, Stage::Egress,
};

// bits / Gbps is nanoseconds; rounded up, exact quotients kept exact.
Nanos ceil_ns(std::int64_t bits, double gbps)
{
    const double x = static_cast<double>(bits) / gbps;
    const double nearest = std::round(x);
    if (std::abs(x - nearest) <= 1e-9 * std::max(1.0, x)) {
        return static_cast<Nanos>(nearest);
    }
    return static_cast<Nanos>(std::ceil(x));
}

struct Task {
    Direction direction;
    int packet_id;
    int stage;
    Nanos ready;

    // FIFO by ready time, forward first, then lower packet id.
    auto key() const { return std::tuple(ready, direction, packet_id); }
};

struct Resource {
    std::string_view name;
    bool busy = false;
    std::vector<Task> waiting;
    Nanos busy_ns = 0;
    int jobs_started = 0;
    bool reconfigured = false;
    bool is_crypto = false;
};

struct Completion {
    Nanos time;
    std::size_t sequence; // keeps pops deterministic for equal times
    std::size_t resource;
    std::optional<Task> task; // empty for a reconfiguration window

    bool operator>(const Completion& other) const
    {
        return std::tie(time, sequence) > std::tie(other.time, other.sequence);
    }
};

class Simulator {
public:
    explicit Simulator(const SimConfig& config) : config_(config)
    {
        for (auto d : {Direction::Forward, Direction::Reverse}) {
            for (int s = 0; s < kStageCount; ++s) {
                const auto name = resource_name(config.topology, d, kStages[s]);
                auto it = by_name_.find(name);
                if (it == by_name_.end()) {
                    it = by_name_.emplace(name, resources_.size()).first;
                    Resource res;
                    res.name = name;
                    resources_.push_back(std::move(res));
                }
                resources_[it->second].is_crypto = kStages[s] == Stage::Crypto;
                route_[static_cast<int>(d)][s] = it->second;
                service_[static_cast<int>(d)][s] = stage_time(config, d, kStages[s]);
            }
        }
    }

    SimResult run()
    {
        SimResult result;
        result.config = config_;
        const Nanos t0 = config_.key_exchange_ns;
        for (int p = 0; p < config_.forward_packets; ++p) {
            enqueue({Direction::Forward, p, 0, t0});
        }
        for (int p = 0; p < config_.reverse_packets; ++p) {
            enqueue({Direction::Reverse, p, 0, t0});
        }
        dispatch_all(t0);

        while (!pending_.empty()) {
            const Nanos now = pending_.top().time;
            while (!pending_.empty() && pending_.top().time == now) {
                const auto done = pending_.top();
                pending_.pop();
                resources_[done.resource].busy = false;
                if (!done.task) {
                    continue;
                }
                const auto& task = *done.task;
                if (task.stage + 1 < kStageCount) {
                    enqueue({task.direction, task.packet_id, task.stage + 1, now});
                } else {
                    result.latencies.push_back({task.direction, task.packet_id, now - t0});
                }
            }
            dispatch_all(now);
        }

        result.events = std::move(events_);
        std::sort(result.events.begin(), result.events.end(), [](const StageEvent& a, const StageEvent& b) {
            return std::tie(a.start, a.direction, a.packet_id, a.stage) <
                   std::tie(b.start, b.direction, b.packet_id, b.stage);
        });
        for (const auto& e : result.events) {
            result.makespan = std::max(result.makespan, e.end);
        }
        for (const auto& r : resources_) {
            const double util = result.makespan > 0 ? double(r.busy_ns) / double(result.makespan) : 0.0;
            result.resources.push_back({r.name, r.busy_ns, util});
        }
        result.reconfigs = std::move(reconfigs_);
        std::sort(result.latencies.begin(), result.latencies.end(), [](const auto& a, const auto& b) {
            return std::tie(a.direction, a.packet_id) < std::tie(b.direction, b.packet_id);
        });
        return result;
    }

private:
    void enqueue(const Task& task)
    {
        resources_[route_[static_cast<int>(task.direction)][task.stage]].waiting.push_back(task);
    }

    void dispatch_all(Nanos now)
    {
        for (std::size_t r = 0; r < resources_.size(); ++r) {
            dispatch(r, now);
        }
    }

    void dispatch(std::size_t index, Nanos now)
    {
        auto& res = resources_[index];
        if (res.busy || res.waiting.empty()) {
            return;
        }
        if (res.is_crypto && config_.reconfig_delay_ns > 0 && !res.reconfigured &&
            res.jobs_started == config_.reconfig_after_packets) {
            res.reconfigured = true;
            res.busy = true;
            reconfigs_.push_back({res.name, now, now + config_.reconfig_delay_ns});
            pending_.push({now + config_.reconfig_delay_ns, sequence_++, index, std::nullopt});
            return;
        }
        const auto next = std::min_element(res.waiting.begin(), res.waiting.end(),
                                           [](const Task& a, const Task& b) { return a.key() < b.key(); });
        const Task task = *next;
        res.waiting.erase(next);

        const Nanos duration = service_[static_cast<int>(task.direction)][task.stage];
        res.busy = true;
        res.busy_ns += duration;
        ++res.jobs_started;
        events_.push_back({task.packet_id, task.direction, kStages[task.stage], res.name, now, now + duration});
        pending_.push({now + duration, sequence_++, index, task});
    }

    SimConfig config_;
    std::vector<Resource> resources_;
    std::map<std::string_view, std::size_t> by_name_;
    std::array<std::array<std::size_t, kStageCount>, 2> route_{};
    std::array<std::array<Nanos, kStageCount>, 2> service_{};
    std::priority_queue<Completion, std::vector<Completion>, std::greater<>> pending_;
    std::size_t sequence_ = 0;
    std::vector<StageEvent> events_;
    std::vector<ReconfigWindow> reconfigs_;
};

} // namespace

std::string_view to_string(Topology t)
{
    switch (t) {
    case Topology::DualInterface:
        return "dual-interface";
    case Topology::SplitBusSinglePci:
        return "split-bus-single-pci";
    case Topology::SharedBidirectionalBus:
        break;
    }
    return "shared-bidirectional-bus";
}

std::string_view to_string(Direction d)
{
    return d == Direction::Forward ? "forward" : "reverse";
}

std::string_view to_string(Stage s)
{
    switch (s) {
    case Stage::Ingress:
        return "ingress-transfer";
    case Stage::WriteDma:
        return "write-dma";
    case Stage::Crypto:
        return "crypto";
    case Stage::ReadDma:
        return "read-dma";
    case Stage::Egress:
        break;
    }
    return "egress-transfer";
}

Topology parse_topology(std::string_view s)
{
    for (auto t : kTopologies) {
        if (to_string(t) == s) {
            return t;
        }
    }
    throw std::invalid_argument("unknown topology '" + std::string(s) +
                                "' (expected dual-interface, split-bus-single-pci or shared-bidirectional-bus)");
}

void validate(const SimConfig& c)
{
    const auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (c.packet_size_bits <= 0) {
        throw std::invalid_argument("packet size must be positive");
    }
    if (c.forward_packets < 0 || c.reverse_packets < 0) {
        throw std::invalid_argument("packet counts must be non-negative");
    }
    if (!positive(c.bus_gbps) || !positive(c.suite_gbps)) {
        throw std::invalid_argument("bus and suite throughput must be positive");
    }
    if ((c.forward_crypto_gbps && !positive(*c.forward_crypto_gbps)) ||
        (c.reverse_crypto_gbps && !positive(*c.reverse_crypto_gbps))) {
        throw std::invalid_argument("crypto engine throughput overrides must be positive");
    }
    if (c.dma_setup_ns < 0 || c.key_exchange_ns < 0 || c.reconfig_delay_ns < 0 || c.reconfig_after_packets < 0) {
        throw std::invalid_argument("delays and reconfiguration packet index must be non-negative");
    }
}

Nanos transfer_time(const SimConfig& config)
{
    return ceil_ns(config.packet_size_bits, config.bus_gbps) + config.dma_setup_ns;
}

Nanos crypto_time(const SimConfig& config, Direction direction)
{
    const auto& override_rate =
        direction == Direction::Forward ? config.forward_crypto_gbps : config.reverse_crypto_gbps;
    return ceil_ns(config.packet_size_bits, override_rate.value_or(config.suite_gbps));
}

Nanos stage_time(const SimConfig& config, Direction direction, Stage stage)
{
    return stage == Stage::Crypto ? crypto_time(config, direction) : transfer_time(config);
}

std::string_view resource_name(Topology topology, Direction direction, Stage stage)
{
    const bool fwd = direction == Direction::Forward;
    if (stage == Stage::Crypto) {
        return fwd ? "ce.fwd" : "ce.rev";
    }
    switch (topology) {
    case Topology::SharedBidirectionalBus:
        return "bus";
    case Topology::SplitBusSinglePci:
        if ((fwd && stage == Stage::Egress) || (!fwd && stage == Stage::Ingress)) {
            return "pci";
        }
        break;
    case Topology::DualInterface:
        break;
    }
    switch (stage) {
    case Stage::Ingress:
        return fwd ? "pci.rx" : "eth.rx";
    case Stage::WriteDma:
        return fwd ? "wdma.fwd" : "wdma.rev";
    case Stage::ReadDma:
        return fwd ? "rdma.fwd" : "rdma.rev";
    case Stage::Egress:
        return fwd ? "eth.tx" : "pci.tx";
    case Stage::Crypto:
        break;
    }
    return {};
}

SimResult run_simulation(const SimConfig& config)
{
    validate(config);
    return Simulator(config).run();
}

TopologyComparison compare_topologies(const SimConfig& base)
{
    TopologyComparison out;
    for (auto t : kTopologies) {
        auto c = base;
        c.topology = t;
        out.results.push_back(run_simulation(c));
    }
    out.ordering.assign(kTopologies.begin(), kTopologies.end());
    std::stable_sort(out.ordering.begin(), out.ordering.end(), [&](Topology a, Topology b) {
        return out.results[static_cast<std::size_t>(a)].makespan < out.results[static_cast<std::size_t>(b)].makespan;
    });
    return out;
}

} // namespace nsp::sim
