#include "fledbat/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fledbat {

namespace {
constexpr std::int64_t kUnbounded = std::numeric_limits<std::int64_t>::max();
}

Simulation::Simulation(const ScenarioConfig& config, std::uint64_t seed)
    : cfg_(config), rng_(seed) {
    auto problems = validate(cfg_);
    if (!problems.empty())
        throw ConfigError(std::move(problems));
    link_ = std::make_unique<BottleneckLink>(events_, cfg_.capacity_pps(), cfg_.link.buffer_pkts);
    link_->set_sink([this](const Packet& pkt) { on_served(pkt); });
    chunk_pkts_ = cfg_.chunk_packets();
    if (!cfg_.rtt.empirical_file.empty() && cfg_.rtt.mode == RttMode::Heterogeneous)
        empirical_delays_ = load_empirical_delays(cfg_.rtt.empirical_file);

    if (cfg_.traffic.mode == TrafficMode::Swarm)
        setup_swarm();
    else
        setup_flows();
}

void Simulation::setup_flows() {
    conns_.reserve(cfg_.flows.size());
    for (std::size_t i = 0; i < cfg_.flows.size(); ++i) {
        const FlowSpec& spec = cfg_.flows[i];
        Connection c;
        c.id = static_cast<int>(i);
        CcConfig cc;
        cc.protocol = spec.protocol;
        cc.target = ms(spec.target_ms);
        cc.alpha = spec.alpha;
        cc.zeta = spec.zeta;
        cc.ledbat_literal_gain = cfg_.ledbat_literal_gain;
        cc.slow_start = spec.slow_start;
        c.cc = CcState::make(cc);
        c.path = make_path_delays(cfg_.rtt, cfg_.capacity_pps(), empirical_delays_, rng_);
        c.nominal_rtt = c.path.fwd_prop + 1.0 / cfg_.capacity_pps() + c.path.back_prop;
        c.start = spec.start_s;
        if (spec.start_jitter_s > 0.0)
            c.start += rng_.uniform(0.0, spec.start_jitter_s);
        c.stop = spec.stop_s;
        c.horizon = cfg_.traffic.mode == TrafficMode::Backlogged ? kUnbounded : chunk_pkts_;
        trace_.flows.push_back(FlowMeta{static_cast<int>(i), spec.protocol, c.start,
                                        std::min(spec.stop_s, cfg_.duration_s)});
        conns_.push_back(std::move(c));
    }
    for (std::size_t i = 0; i < conns_.size(); ++i) {
        Connection& c = conns_[i];
        events_.schedule(c.start, EventKind::Timer, [this, &c] { activate(c, kInitialCwnd); });
        if (c.stop < cfg_.duration_s)
            events_.schedule(c.stop, EventKind::Timer, [this, &c] { deactivate(c); });
    }
}

void Simulation::setup_swarm() {
    const SwarmSpec& swarm = cfg_.traffic.swarm;
    const FlowSpec& tmpl = cfg_.flows.front();
    conns_.reserve(static_cast<std::size_t>(swarm.n_neighbors));
    for (int i = 0; i < swarm.n_neighbors; ++i) {
        Connection c;
        c.id = i;
        CcConfig cc;
        cc.protocol = tmpl.protocol;
        cc.target = ms(tmpl.target_ms);
        cc.alpha = tmpl.alpha;
        cc.zeta = tmpl.zeta;
        cc.ledbat_literal_gain = cfg_.ledbat_literal_gain;
        cc.slow_start = tmpl.slow_start;
        c.cc = CcState::make(cc);
        c.path = make_path_delays(cfg_.rtt, cfg_.capacity_pps(), empirical_delays_, rng_);
        c.nominal_rtt = c.path.fwd_prop + 1.0 / cfg_.capacity_pps() + c.path.back_prop;
        c.start = 0.0;
        c.stop = cfg_.duration_s;
        c.horizon = 0;
        conns_.push_back(std::move(c));
        trace_.flows.push_back(FlowMeta{i, tmpl.protocol, 0.0, cfg_.duration_s});
    }
    // Fisher-Yates prefix: the initially active subset, in activation order.
    std::vector<int> order(static_cast<std::size_t>(swarm.n_neighbors));
    for (int i = 0; i < swarm.n_neighbors; ++i)
        order[static_cast<std::size_t>(i)] = i;
    for (int i = 0; i < swarm.n_active; ++i) {
        const std::size_t j =
            static_cast<std::size_t>(i) +
            rng_.pick_index(static_cast<std::size_t>(swarm.n_neighbors - i));
        std::swap(order[static_cast<std::size_t>(i)], order[j]);
    }
    // All initial connections open at t = 0 (the active count is n_active
    // from the start); their first chunks begin staggered, so the late ones
    // take their first delay samples against a standing queue.
    for (int i = 0; i < swarm.n_active; ++i) {
        Connection& c = conns_[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])];
        events_.schedule(0.0, EventKind::Timer, [this, &c] { activate(c, kInitialCwnd); });
        const double first_chunk = swarm.stagger_s * static_cast<double>(i);
        events_.schedule(first_chunk, EventKind::Timer, [this, &c] {
            c.horizon = c.next_seq + chunk_pkts_;
            try_send(c);
        });
    }
}

void Simulation::activate(Connection& c, double cwnd0) {
    c.active = true;
    c.cc.cwnd = std::max(kMinCwnd, cwnd0);
    c.dup_count = 0;
    c.rto_deadline = std::numeric_limits<double>::infinity();
    try_send(c);
}

void Simulation::deactivate(Connection& c) {
    c.active = false;
    c.rto_deadline = std::numeric_limits<double>::infinity();
}

void Simulation::try_send(Connection& c) {
    if (!c.active)
        return;
    bool sent = false;
    while (c.next_seq < c.horizon && c.in_flight() < c.window()) {
        send_packet(c, c.next_seq++, false);
        sent = true;
    }
    if (sent && std::isinf(c.rto_deadline))
        arm_rto(c);
}

void Simulation::send_packet(Connection& c, std::int64_t seq, bool retransmit) {
    Packet pkt{c.id, seq, events_.now(), retransmit};
    // The sender's access segment: fwd_prop covers propagation up to the
    // bottleneck queue, which sits adjacent to the receiver.
    events_.schedule(events_.now() + c.path.fwd_prop, EventKind::PacketArrivesAtQueue,
                     [this, pkt] { link_->enqueue(pkt); });
}

void Simulation::on_served(const Packet& pkt) {
    Connection& c = conns_[static_cast<std::size_t>(pkt.flow)];
    const double owd = one_way_delay(pkt, events_.now());
    if (pkt.seq == c.rcv_next) {
        ++c.rcv_next;
        while (!c.out_of_order.empty() && *c.out_of_order.begin() == c.rcv_next) {
            c.out_of_order.erase(c.out_of_order.begin());
            ++c.rcv_next;
        }
    } else if (pkt.seq > c.rcv_next) {
        c.out_of_order.insert(pkt.seq);
    } // below rcv_next: a spurious retransmission; ack again

    const Ack ack{c.id, c.rcv_next, owd};
    events_.schedule(events_.now() + c.path.back_prop, EventKind::AckDelivered,
                     [this, &c, ack] { on_ack(c, ack); });
}

void Simulation::on_ack(Connection& c, const Ack& ack) {
    const std::int64_t advance = ack.cum - c.cum_ack;
    if (advance <= 0) {
        on_duplicate_ack(c, ack);
        return;
    }
    c.cum_ack = ack.cum;
    c.dup_count = 0;
    c.acked_total += advance;

    if (!c.active) {
        // Draining acks of a stopped flow: the bytes were delivered and count
        // for metrics, but the window no longer reacts.
        c.cc.base.observe(ack.owd);
        trace_.acks.push_back(AckSample{events_.now(), c.id, c.cc.cwnd,
                                        (ack.owd - c.cc.base.min_delay) - c.cc.cfg.target,
                                        c.cc.base.min_delay, static_cast<int>(advance),
                                        FlowEvent::Ack});
        return;
    }

    const double delta = compute_offset(c.cc, ack.owd);
    fledbat::on_ack(c.cc, delta);
    trace_.acks.push_back(AckSample{events_.now(), c.id, c.cc.cwnd, delta, c.cc.base.min_delay,
                                    static_cast<int>(advance), FlowEvent::Ack});

    c.rto_deadline = c.in_flight() > 0 ? events_.now() + rto_multiple_ * c.nominal_rtt
                                       : std::numeric_limits<double>::infinity();

    if (c.cum_ack >= c.horizon && c.horizon != kUnbounded) {
        events_.schedule(events_.now(), EventKind::ChunkDone, [this, &c] { on_chunk_done(c); });
        return; // nothing left to send until the chunk transition runs
    }
    try_send(c);
}

void Simulation::on_duplicate_ack(Connection& c, const Ack& ack) {
    c.cc.base.observe(ack.owd); // the delay sample is valid even on a dupack
    if (!c.active)
        return;
    ++c.dup_count;
    if (c.dup_count == 3) {
        handle_loss(c, FlowEvent::FastRetransmit);
        send_packet(c, c.cum_ack, true); // fast retransmit bypasses the window
    } else if (c.dup_count > 3) {
        // Window inflation: each further dupack signals a departure, so one
        // new packet may go out. Keeps the ack clock running through
        // recovery and avoids a full-window burst when the hole fills.
        if (c.next_seq < c.horizon && c.window() + c.dup_count > c.in_flight())
            send_packet(c, c.next_seq++, false);
    }
}

void Simulation::handle_loss(Connection& c, FlowEvent kind) {
    // One halving per congestion episode: losses from the same window (below
    // recover_until) keep retransmitting without shrinking again.
    if (c.cum_ack >= c.recover_until && on_loss(c.cc, events_.now(), c.nominal_rtt))
        c.recover_until = c.next_seq;
    trace_.acks.push_back(AckSample{events_.now(), c.id, c.cc.cwnd, 0.0, c.cc.base.min_delay, 0,
                                    kind});
}

void Simulation::on_chunk_done(Connection& c) {
    if (!c.active)
        return;
    if (cfg_.traffic.mode == TrafficMode::ChunkByChunk) {
        // Next chunk to the same peer, window preserved; the ~RTT pause
        // emerges from ack-clocking because the pipe is already drained.
        c.horizon += chunk_pkts_;
        trace_.chunks.push_back(ChunkRecord{events_.now(), c.id, c.acked_total, active_count()});
        try_send(c);
        return;
    }

    // Swarm: keep the peer with probability P_P, otherwise hand the slot to a
    // random inactive neighbor with a fresh connection (window back to 1).
    const PeerChoice choice = pick_next_peer(c.id, inactive_neighbors(c.id),
                                             cfg_.traffic.swarm.persistence, rng_);
    if (choice.peer == c.id) {
        c.horizon += chunk_pkts_;
        trace_.chunks.push_back(ChunkRecord{events_.now(), c.id, c.acked_total, active_count()});
        try_send(c);
        return;
    }
    deactivate(c);
    Connection& next = conns_[static_cast<std::size_t>(choice.peer)];
    // Only the congestion window is reset on a peer switch; the base-delay
    // estimate belongs to the path and survives reactivation.
    const BaseDelayEstimator base = next.cc.base;
    next.cc = CcState::make(c.cc.cfg);
    next.cc.base = base;
    next.horizon = next.next_seq + chunk_pkts_;
    activate(next, choice.reset_cwnd ? 1.0 : kInitialCwnd);
    trace_.chunks.push_back(ChunkRecord{events_.now(), c.id, c.acked_total, active_count()});
}

std::vector<int> Simulation::inactive_neighbors(int except) const {
    std::vector<int> out;
    for (const Connection& c : conns_)
        if (!c.active && c.id != except)
            out.push_back(c.id);
    return out;
}

int Simulation::active_count() const {
    int n = 0;
    for (const Connection& c : conns_)
        n += c.active ? 1 : 0;
    return n;
}

void Simulation::arm_rto(Connection& c) {
    c.rto_deadline = events_.now() + rto_multiple_ * c.nominal_rtt;
    if (!c.rto_scheduled) {
        c.rto_scheduled = true;
        events_.schedule(c.rto_deadline, EventKind::Timer, [this, &c] { on_rto_event(c); });
    }
}

void Simulation::on_rto_event(Connection& c) {
    c.rto_scheduled = false;
    if (!c.active || c.in_flight() <= 0 || std::isinf(c.rto_deadline))
        return;
    if (events_.now() + 1e-12 < c.rto_deadline) {
        // Deadline was pushed by acks since this event was scheduled.
        c.rto_scheduled = true;
        events_.schedule(c.rto_deadline, EventKind::Timer, [this, &c] { on_rto_event(c); });
        return;
    }
    handle_loss(c, FlowEvent::Timeout);
    // Timeout recovery is go-back-N: everything unacked is presumed lost and
    // resent in order. Serial timeouts per hole would wedge the flow after a
    // burst of drops.
    c.next_seq = c.cum_ack;
    c.dup_count = 0;
    try_send(c);
    arm_rto(c);
}

void Simulation::schedule_sampling() {
    const double period = ms(cfg_.sample_ms);
    // Self-rescheduling sampler; one record per period including t = 0.
    struct Sampler {
        Simulation* sim;
        double period;
        void operator()() const {
            sim->trace_.queue.push_back(
                QueueSample{sim->events_.now(), sim->link_->queue_len()});
            const double next = sim->events_.now() + period;
            if (next <= sim->cfg_.duration_s + 1e-12)
                sim->events_.schedule(next, EventKind::Sample, Sampler{sim, period});
        }
    };
    events_.schedule(0.0, EventKind::Sample, Sampler{this, period});
}

SimulationTrace Simulation::run() {
    trace_.duration = cfg_.duration_s;
    trace_.packet_bytes = cfg_.link.packet_bytes;
    trace_.capacity_pps = cfg_.capacity_pps();
    schedule_sampling();
    events_.run_until(cfg_.duration_s);
    trace_.drops = link_->drops();
    trace_.packets_served = link_->served();
    return std::move(trace_);
}

SimulationTrace run_simulation(const ScenarioConfig& config, std::uint64_t seed) {
    return Simulation(config, seed).run();
}

} // namespace fledbat
