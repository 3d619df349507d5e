#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <vector>

#include "fledbat/config.hpp"
#include "fledbat/event_queue.hpp"
#include "fledbat/link.hpp"
#include "fledbat/packet.hpp"
#include "fledbat/protocols.hpp"
#include "fledbat/rng.hpp"
#include "fledbat/trace.hpp"
#include "fledbat/traffic.hpp"

namespace fledbat {

/// One packet-level run: flows (or a swarm of connections) share one
/// bottleneck, acks return unharmed on per-flow paths, every congestion
/// window is ack-clocked. (config, seed) -> trace is a pure function.
class Simulation {
  public:
    Simulation(const ScenarioConfig& config, std::uint64_t seed);

    SimulationTrace run();

  private:
    struct Connection {
        int id = 0;
        CcState cc;
        PathDelays path;
        double nominal_rtt = 0.0;
        double start = 0.0;
        double stop = 0.0;
        bool active = false;

        // sender
        std::int64_t next_seq = 0;
        std::int64_t cum_ack = 0;
        std::int64_t horizon = 0; // first seq the sender may not use yet
        int dup_count = 0;
        std::int64_t recover_until = 0; // losses below this seq belong to one episode
        std::int64_t acked_total = 0;

        // receiver
        std::int64_t rcv_next = 0;
        std::set<std::int64_t> out_of_order;

        // retransmission timer (lazy: the scheduled event re-checks the
        // deadline instead of being cancelled on every ack)
        double rto_deadline = 0.0;
        bool rto_scheduled = false;

        std::int64_t in_flight() const { return next_seq - cum_ack; }
        std::int64_t window() const { return static_cast<std::int64_t>(cc.cwnd); }
    };

    struct Ack {
        int flow;
        std::int64_t cum;
        double owd;
    };

    void setup_flows();
    void setup_swarm();
    void activate(Connection& c, double cwnd0);
    void deactivate(Connection& c);
    void try_send(Connection& c);
    void send_packet(Connection& c, std::int64_t seq, bool retransmit);
    void on_served(const Packet& pkt);
    void on_ack(Connection& c, const Ack& ack);
    void on_duplicate_ack(Connection& c, const Ack& ack);
    void on_chunk_done(Connection& c);
    void handle_loss(Connection& c, FlowEvent kind);
    void arm_rto(Connection& c);
    void on_rto_event(Connection& c);
    void schedule_sampling();
    int active_count() const;
    std::vector<int> inactive_neighbors(int except) const;

    ScenarioConfig cfg_;
    Rng rng_;
    EventQueue events_;
    std::unique_ptr<BottleneckLink> link_;
    std::vector<Connection> conns_;
    std::vector<double> empirical_delays_;
    std::int64_t chunk_pkts_ = 0;
    double rto_multiple_ = 4.0; // timeout after this many nominal RTTs of silence
    SimulationTrace trace_;
};

/// Convenience wrapper: build, run, return the trace.
SimulationTrace run_simulation(const ScenarioConfig& config, std::uint64_t seed);

} // namespace fledbat
