#include "fledbat/protocols.hpp"

#include <algorithm>
#include <stdexcept>

namespace fledbat {

const char* to_string(Protocol p) {
    switch (p) {
    case Protocol::Ledbat: return "ledbat";
    case Protocol::Fledbat: return "fledbat";
    case Protocol::Reno: return "reno";
    }
    return "?";
}

Protocol protocol_from_string(const std::string& name) {
    if (name == "ledbat") return Protocol::Ledbat;
    if (name == "fledbat") return Protocol::Fledbat;
    if (name == "reno") return Protocol::Reno;
    throw std::invalid_argument("unknown protocol '" + name + "'");
}

CcState CcState::make(const CcConfig& cfg) {
    CcState st;
    st.cfg = cfg;
    st.cwnd = kInitialCwnd;
    // Reno's slow start is governed by cwnd < ssthresh; the flag drives the
    // optional slow-start variant of the delay-based protocols.
    st.in_slow_start = cfg.protocol != Protocol::Reno && cfg.slow_start;
    return st;
}

double compute_offset(CcState& st, double owd) {
    st.base.observe(owd);
    return (owd - st.base.min_delay) - st.cfg.target;
}

void ledbat_on_ack(CcState& st, double delta) {
    const double tau = st.cfg.target;
    // Default gain -delta/tau = (tau - queuing_delay)/tau: +1 below an empty
    // queue, 0 exactly on target, negative above. The literal variant keeps
    // growing until the offset itself reaches tau.
    const double gain = st.cfg.ledbat_literal_gain ? (tau - delta) / tau : -delta / tau;
    st.cwnd += st.cfg.alpha * gain / st.cwnd;
    st.cwnd = std::max(st.cwnd, kMinCwnd);
}

void fledbat_on_ack(CcState& st, double delta) {
    st.cwnd += st.cfg.alpha / st.cwnd;
    if (delta > 0.0)
        st.cwnd -= (st.cfg.zeta / st.cfg.target) * delta;
    st.cwnd = std::max(st.cwnd, kMinCwnd);
}

void reno_on_ack(CcState& st) {
    if (st.cwnd < st.ssthresh)
        st.cwnd += 1.0; // slow start
    else
        st.cwnd += 1.0 / st.cwnd; // congestion avoidance
}

void on_ack(CcState& st, double delta) {
    switch (st.cfg.protocol) {
    case Protocol::Reno:
        reno_on_ack(st);
        return;
    case Protocol::Ledbat:
    case Protocol::Fledbat:
        if (st.in_slow_start) {
            if (delta > 0.0) {
                st.in_slow_start = false; // fall through to the steady rule
            } else {
                st.cwnd += st.cfg.alpha;
                return;
            }
        }
        if (st.cfg.protocol == Protocol::Ledbat)
            ledbat_on_ack(st, delta);
        else
            fledbat_on_ack(st, delta);
        return;
    }
}

bool on_loss(CcState& st, double now, double rtt) {
    st.in_slow_start = false;
    if (now - st.last_halve_time < rtt)
        return false;
    st.last_halve_time = now;
    st.cwnd = std::max(kMinCwnd, st.cwnd / 2.0);
    if (st.cfg.protocol == Protocol::Reno)
        st.ssthresh = st.cwnd;
    return true;
}

} // namespace fledbat
