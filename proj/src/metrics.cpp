#include "fledbat/metrics.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace fledbat {

double jain_index(const Eigen::VectorXd& rates) {
    if (rates.size() == 0)
        throw std::invalid_argument("jain_index: empty rate vector");
    if ((rates.array() < 0.0).any())
        throw std::invalid_argument("jain_index: negative rate");
    const double sum = rates.sum();
    const double sumsq = rates.squaredNorm();
    if (sumsq == 0.0)
        return 1.0;
    return sum * sum / (static_cast<double>(rates.size()) * sumsq);
}

double efficiency(const Eigen::VectorXd& rates, double capacity) {
    if (capacity <= 0.0)
        throw std::invalid_argument("efficiency: capacity must be positive");
    return rates.sum() / capacity;
}

double RateSample::total_bytes() const {
    double total = 0.0;
    for (const auto& [_, b] : bytes)
        total += b;
    return total;
}

RateSample stationary_window(const SimulationTrace& trace, double discard, double t_end) {
    if (t_end < 0.0)
        t_end = trace.duration;
    if (discard >= t_end)
        throw std::invalid_argument("stationary_window: discard leaves an empty window");

    RateSample sample;
    sample.t_start = discard;
    sample.t_end = t_end;
    for (const FlowMeta& f : trace.flows) {
        if (f.start >= t_end || f.stop <= discard)
            continue; // never active inside the window
        sample.bytes[f.id] = 0.0;
        sample.protocol[f.id] = f.protocol;
    }
    for (const AckSample& a : trace.acks) {
        if (a.t < discard || a.t > t_end || a.acked_pkts <= 0)
            continue;
        auto it = sample.bytes.find(a.flow);
        if (it != sample.bytes.end())
            it->second += static_cast<double>(a.acked_pkts) * trace.packet_bytes;
    }
    return sample;
}

Eigen::VectorXd rates_vector(const RateSample& sample) {
    Eigen::VectorXd rates(static_cast<Eigen::Index>(sample.bytes.size()));
    Eigen::Index i = 0;
    for (const auto& [_, b] : sample.bytes)
        rates[i++] = b / sample.duration();
    return rates;
}

std::optional<double> protocol_breakdown(const RateSample& sample, Protocol protocol) {
    const double total = sample.total_bytes();
    if (total <= 0.0)
        return std::nullopt;
    double part = 0.0;
    for (const auto& [id, b] : sample.bytes)
        if (sample.protocol.at(id) == protocol)
            part += b;
    return part / total;
}

double mean_queue(const SimulationTrace& trace, double t0, double t1) {
    double sum = 0.0;
    std::int64_t n = 0;
    for (const QueueSample& q : trace.queue) {
        if (q.t < t0 || q.t > t1)
            continue;
        sum += q.qlen;
        ++n;
    }
    if (n == 0)
        throw std::invalid_argument("mean_queue: no samples in window");
    return sum / static_cast<double>(n);
}

double mean_queueing_delay(const SimulationTrace& trace, double t0, double t1) {
    // delta + dmin = owd - target, so differencing against the smallest
    // value a flow ever recorded cancels the target and yields the queueing
    // delay referenced to the best base-delay observation of the run.
    std::map<int, double> floor_owd;
    for (const AckSample& a : trace.acks) {
        const double owd = a.delta + a.dmin;
        auto [it, inserted] = floor_owd.try_emplace(a.flow, owd);
        if (!inserted)
            it->second = std::min(it->second, owd);
    }
    double sum = 0.0;
    std::int64_t n = 0;
    for (const AckSample& a : trace.acks) {
        if (a.t < t0 || a.t > t1)
            continue;
        sum += (a.delta + a.dmin) - floor_owd.at(a.flow);
        ++n;
    }
    if (n == 0)
        throw std::invalid_argument("mean_queueing_delay: no acks in window");
    return sum / static_cast<double>(n);
}

} // namespace fledbat
