#include "fledbat/link.hpp"

#include <stdexcept>

namespace fledbat {

BottleneckLink::BottleneckLink(EventQueue& events, double capacity_pps, int buffer_pkts)
    : events_(events), capacity_pps_(capacity_pps), buffer_pkts_(buffer_pkts) {
    if (capacity_pps <= 0.0)
        throw std::invalid_argument("BottleneckLink: capacity must be positive");
    if (buffer_pkts <= 0)
        throw std::invalid_argument("BottleneckLink: buffer must be positive");
}

bool BottleneckLink::enqueue(const Packet& pkt) {
    if (queue_len() >= buffer_pkts_) {
        ++drops_;
        return false;
    }
    queue_.push_back(pkt);
    if (!busy_)
        start_service();
    return true;
}

void BottleneckLink::start_service() {
    busy_ = true;
    events_.schedule(events_.now() + service_time(), EventKind::PacketDeparts,
                     [this] { on_departure(); });
}

void BottleneckLink::on_departure() {
    Packet pkt = queue_.front();
    queue_.pop_front();
    ++served_;
    busy_ = false;
    if (!queue_.empty())
        start_service(); // work conservation: next service starts this instant
    if (sink_)
        sink_(pkt);
}

} // namespace fledbat
