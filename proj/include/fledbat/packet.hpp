#pragma once

#include <cstdint>
#include <stdexcept>

namespace fledbat {

struct Packet {
    int flow = -1;
    std::int64_t seq = 0;
    double send_time = 0.0; // virtual time at (re)transmission
    bool retransmit = false;
};

/// One-way propagation components of a flow's path, excluding queueing and
/// transmission. fwd_prop covers sender->bottleneck->receiver; back_prop is
/// the lossless ack return path.
struct PathDelays {
    double fwd_prop = 0.0;
    double back_prop = 0.0;
};

/// Delay experienced by a packet, from timestamps, the way a real receiver
/// measures it. Simulated clocks are synchronized, so there is no offset term.
inline double one_way_delay(const Packet& pkt, double recv_time) {
    if (recv_time < pkt.send_time)
        throw std::logic_error("one_way_delay: reception precedes transmission");
    return recv_time - pkt.send_time;
}

} // namespace fledbat
