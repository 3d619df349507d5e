#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "fledbat/protocols.hpp"
#include "fledbat/units.hpp"

namespace fledbat {

enum class TrafficMode { Backlogged, ChunkByChunk, Swarm };
enum class RttMode { Homogeneous, Heterogeneous };

const char* to_string(TrafficMode m);
const char* to_string(RttMode m);

struct LinkSpec {
    double capacity_bps = 10e6;
    int buffer_pkts = 100;
    int packet_bytes = 1500;
};

struct FlowSpec {
    Protocol protocol = Protocol::Fledbat;
    double start_s = 0.0;
    double start_jitter_s = 0.0; // per-run uniform [0, jitter) added to start_s
    double stop_s = std::numeric_limits<double>::infinity();
    double target_ms = 25.0;
    double alpha = 1.0;
    double zeta = 0.1;
    bool slow_start = false;
};

struct SwarmSpec {
    int n_neighbors = 10;  // connections opened
    int n_active = 5;      // concurrently active
    double persistence = 0.8; // probability of keeping the same peer after a chunk
    double stagger_s = 2.0;   // spacing between the first chunks of the initial set
};

struct TrafficSpec {
    TrafficMode mode = TrafficMode::Backlogged;
    double chunk_bytes = 250e3;
    SwarmSpec swarm;
};

struct RttSpec {
    RttMode mode = RttMode::Homogeneous;
    double rtt_ms = 50.0;           // homogeneous round-trip budget
    double fwd_ms = 25.0;           // one-way base delay on the data path
    double mean_backward_ms = 37.9; // heterogeneous: mean of the return-path draw
    double backward_cap_ms = 200.0; // heterogeneous: draws clamped here
    std::string empirical_file;     // optional: one return-path delay (seconds) per line
};

/// Full experiment description. Defaults are the reference scenario: 10 Mbps
/// bottleneck, 100-packet buffer, 1500-byte packets, 50 ms RTT, 25 ms target.
struct ScenarioConfig {
    LinkSpec link;
    std::vector<FlowSpec> flows;
    TrafficSpec traffic;
    RttSpec rtt;
    double duration_s = 60.0;
    double sample_ms = 10.0;
    double measure_discard_s = 0.0; // summary metrics aggregate [discard, duration]
    std::uint64_t seed = 1;
    int repetitions = 10;
    bool ledbat_literal_gain = false;

    double capacity_pps() const {
        return packets_per_second(link.capacity_bps, link.packet_bytes);
    }
    std::int64_t chunk_packets() const;
};

/// Violated constraints, one human-readable line each; empty means valid.
std::vector<std::string> validate(const ScenarioConfig& config);

struct ConfigError : std::runtime_error {
    explicit ConfigError(std::vector<std::string> problems);
    std::vector<std::string> problems;
};

/// Parses the flat dotted-key format (see README for the grammar):
///   key = value        one per line, '#' starts a comment
///   flow.<i>.<field>   indexed keys build the flow list
/// Unknown keys and malformed values are errors. The parsed config is
/// validated; throws ConfigError listing every problem.
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config_file(const std::string& path);

/// Inverse of parse_config: emits a complete key/value listing that parses
/// back to an identical config.
std::string emit_config(const ScenarioConfig& config);

bool operator==(const LinkSpec&, const LinkSpec&);
bool operator==(const FlowSpec&, const FlowSpec&);
bool operator==(const SwarmSpec&, const SwarmSpec&);
bool operator==(const TrafficSpec&, const TrafficSpec&);
bool operator==(const RttSpec&, const RttSpec&);
bool operator==(const ScenarioConfig&, const ScenarioConfig&);

} // namespace fledbat
