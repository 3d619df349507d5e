#pragma once

#include <limits>
#include <string>

namespace fledbat {

enum class Protocol { Ledbat, Fledbat, Reno };

const char* to_string(Protocol p);
Protocol protocol_from_string(const std::string& name); // throws std::invalid_argument

/// Running minimum of observed one-way delays; the flow's base-delay
/// estimate. All-time minimum, no history windowing: a latecomer that never
/// sees an empty queue keeps an inflated base for its whole lifetime.
struct BaseDelayEstimator {
    double min_delay = std::numeric_limits<double>::infinity();

    void observe(double owd) {
        if (owd < min_delay)
            min_delay = owd;
    }
    bool has_sample() const { return min_delay != std::numeric_limits<double>::infinity(); }
};

struct CcConfig {
    Protocol protocol = Protocol::Fledbat;
    double target = 0.025; // queuing-delay target, seconds; > 0 for delay-based protocols
    double alpha = 1.0;    // additive-increase gain, packets per RTT
    double zeta = 0.1;     // multiplicative-decrease factor (Fledbat only)
    // Literal reading of the published Ledbat gain alpha*(tau - delta)/tau,
    // whose zero-growth point sits at twice the target. Off by default; the
    // default gain -delta/tau stops the window exactly at the target.
    bool ledbat_literal_gain = false;
    // Optional slow-start for the delay-based protocols (exited on the first
    // positive offset or loss). Reno always starts in slow start.
    bool slow_start = false;
};

inline constexpr double kInitialCwnd = 2.0;
inline constexpr double kMinCwnd = 1.0;

/// Per-flow congestion-control state. cwnd is real-valued; packet injection
/// quantizes with floor(cwnd) at the transmission layer.
struct CcState {
    CcConfig cfg;
    double cwnd = kInitialCwnd;
    double ssthresh = std::numeric_limits<double>::infinity();
    bool in_slow_start = false;
    BaseDelayEstimator base;
    double last_halve_time = -std::numeric_limits<double>::infinity();

    static CcState make(const CcConfig& cfg);
};

/// Folds the delay sample into the base estimate, then returns the offset
/// from target: (owd - d_min) - target. Negative below target.
double compute_offset(CcState& st, double owd);

void ledbat_on_ack(CcState& st, double delta);
void fledbat_on_ack(CcState& st, double delta);
void reno_on_ack(CcState& st);

/// Per-ack update dispatch for an ack of new data carrying offset `delta`.
void on_ack(CcState& st, double delta);

/// Loss reaction: cwnd <- max(1, cwnd/2), at most once per RTT (the gate uses
/// the flow's nominal RTT). Returns whether a halving was applied.
bool on_loss(CcState& st, double now, double rtt);

} // namespace fledbat
