#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nsp::sim {

using Nanos = std::int64_t;

enum class Topology {
    DualInterface,          // separate host and network interfaces, one chain per direction
    SplitBusSinglePci,      // separate read/write buses, one PCI shared by both directions
    SharedBidirectionalBus, // every transfer on one bidirectional bus
};

inline constexpr std::array kTopologies{
    Topology::DualInterface,
    Topology::SplitBusSinglePci,
    Topology::SharedBidirectionalBus,
};

enum class Direction { Forward, Reverse };

enum class Stage { Ingress, WriteDma, Crypto, ReadDma, Egress };

inline constexpr int kStageCount = 5;

std::string_view to_string(Topology t);
std::string_view to_string(Direction d);
std::string_view to_string(Stage s);
Topology parse_topology(std::string_view s);

/// Forward packets travel host -> network (plaintext in, ciphertext out);
/// reverse packets travel network -> host.
struct SimConfig {
    Topology topology = Topology::DualInterface;
    std::int64_t packet_size_bits = 1024;
    int forward_packets = 0;
    int reverse_packets = 0;
    double bus_gbps = 1.0;
    /// Composed throughput of the active suite; drives both crypto engines
    /// unless a per-engine override is set.
    double suite_gbps = 1.0;
    std::optional<double> forward_crypto_gbps;
    std::optional<double> reverse_crypto_gbps;
    Nanos dma_setup_ns = 0;
    /// One-time delay before any packet is injected.
    Nanos key_exchange_ns = 0;
    /// Each crypto engine is held for this long before its
    /// (reconfig_after_packets + 1)-th job, modeling a suite switch.
    Nanos reconfig_delay_ns = 0;
    int reconfig_after_packets = 0;

    friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

/// Throws std::invalid_argument when a rate or size is not positive or a count is negative.
void validate(const SimConfig& config);

/// Transfer stages: ceil(bits / bus rate) + DMA setup.
Nanos transfer_time(const SimConfig& config);
/// Crypto stage: ceil(bits / engine rate).
Nanos crypto_time(const SimConfig& config, Direction direction);
Nanos stage_time(const SimConfig& config, Direction direction, Stage stage);

/// Name of the resource a stage occupies under a topology. Stages mapped to
/// the same name contend for it.
std::string_view resource_name(Topology topology, Direction direction, Stage stage);

struct StageEvent {
    int packet_id = 0;
    Direction direction = Direction::Forward;
    Stage stage = Stage::Ingress;
    std::string_view resource;
    Nanos start = 0;
    Nanos end = 0;

    friend bool operator==(const StageEvent&, const StageEvent&) = default;
};

struct ResourceUsage {
    std::string_view name;
    Nanos busy_ns = 0;
    double utilization = 0.0;

    friend bool operator==(const ResourceUsage&, const ResourceUsage&) = default;
};

struct ReconfigWindow {
    std::string_view resource;
    Nanos start = 0;
    Nanos end = 0;

    friend bool operator==(const ReconfigWindow&, const ReconfigWindow&) = default;
};

struct PacketLatency {
    Direction direction = Direction::Forward;
    int packet_id = 0;
    Nanos latency = 0;

    friend bool operator==(const PacketLatency&, const PacketLatency&) = default;
};

struct SimResult {
    SimConfig config;
    std::vector<StageEvent> events; // ordered by start, then direction, packet, stage
    Nanos makespan = 0;
    std::vector<ResourceUsage> resources;
    std::vector<ReconfigWindow> reconfigs;
    std::vector<PacketLatency> latencies;

    friend bool operator==(const SimResult&, const SimResult&) = default;
};

SimResult run_simulation(const SimConfig& config);

struct TopologyComparison {
    std::vector<SimResult> results; // in kTopologies order
    std::vector<Topology> ordering; // by makespan ascending, ties in kTopologies order
};

/// Runs the same workload under every topology; base.topology is ignored.
TopologyComparison compare_topologies(const SimConfig& base);

} // namespace nsp::sim
