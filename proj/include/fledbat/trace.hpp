#pragma once

#include <cstdint>
#include <vector>

#include "fledbat/protocols.hpp"

namespace fledbat {

enum class FlowEvent { Ack, FastRetransmit, Timeout };

/// One record per congestion-window update or loss reaction:
/// (time, flow, cwnd, offset from target, base-delay estimate).
struct AckSample {
    double t;
    int flow;
    double cwnd;
    double delta;
    double dmin;
    int acked_pkts; // cumulative-ack advance credited to this record
    FlowEvent event;

    friend bool operator==(const AckSample&, const AckSample&) = default;
};

struct QueueSample {
    double t;
    int qlen;

    friend bool operator==(const QueueSample&, const QueueSample&) = default;
};

struct FlowMeta {
    int id;
    Protocol protocol;
    double start;
    double stop;

    friend bool operator==(const FlowMeta&, const FlowMeta&) = default;
};

/// Emitted whenever a connection finishes a chunk (chunk and swarm traffic).
struct ChunkRecord {
    double t;
    int flow;
    std::int64_t acked_pkts_total; // cumulative acked packets at the boundary
    int active_conns;              // active connections right after the transition

    friend bool operator==(const ChunkRecord&, const ChunkRecord&) = default;
};

struct SimulationTrace {
    std::vector<FlowMeta> flows;
    std::vector<QueueSample> queue;
    std::vector<AckSample> acks;
    std::vector<ChunkRecord> chunks;
    std::int64_t drops = 0;
    std::int64_t packets_served = 0;
    double duration = 0.0;
    int packet_bytes = 1500;
    double capacity_pps = 0.0;

    friend bool operator==(const SimulationTrace&, const SimulationTrace&) = default;
};

} // namespace fledbat
