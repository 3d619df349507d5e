#pragma once

#include <cstdint>
#include <deque>
#include <functional>

#include "fledbat/event_queue.hpp"
#include "fledbat/packet.hpp"

namespace fledbat {

/// The single shared resource: a finite drop-tail FIFO in packets, served at
/// a fixed rate of one packet every 1/capacity seconds while backlogged.
class BottleneckLink {
  public:
    /// Called when a packet finishes service (the receiver sits at the link
    /// output; any further propagation is the caller's business).
    using ServedFn = std::function<void(const Packet&)>;

    BottleneckLink(EventQueue& events, double capacity_pps, int buffer_pkts);

    void set_sink(ServedFn sink) { sink_ = std::move(sink); }

    /// Drop-tail admission at the current clock. Returns false when the
    /// buffer is full; a drop is a modeled outcome, not an error.
    bool enqueue(const Packet& pkt);

    /// Occupancy in packets, including the packet in service.
    int queue_len() const { return static_cast<int>(queue_.size()); }

    double capacity_pps() const { return capacity_pps_; }
    double service_time() const { return 1.0 / capacity_pps_; }
    int buffer_pkts() const { return buffer_pkts_; }

    std::int64_t drops() const { return drops_; }
    std::int64_t served() const { return served_; }

  private:
    void start_service();
    void on_departure();

    EventQueue& events_;
    double capacity_pps_;
    int buffer_pkts_;
    std::deque<Packet> queue_;
    bool busy_ = false;
    ServedFn sink_;
    std::int64_t drops_ = 0;
    std::int64_t served_ = 0;
};

} // namespace fledbat
