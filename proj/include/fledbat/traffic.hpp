#pragma once

#include <vector>

#include "fledbat/config.hpp"
#include "fledbat/packet.hpp"
#include "fledbat/rng.hpp"

namespace fledbat {

/// One return-path delay draw for a heterogeneous peer: exponential with the
/// configured mean, clamped at the cap, or a uniform pick from the empirical
/// list when one is loaded. Fixed per neighbor for a whole run.
double sample_backward_delay(const RttSpec& rtt, const std::vector<double>& empirical, Rng& rng);

/// Loads one nonnegative delay (seconds) per line; '#' comments allowed.
std::vector<double> load_empirical_delays(const std::string& path);

/// Path delays for flow/neighbor construction. Homogeneous mode back-fills
/// the return path so fwd + transmission + back equals the configured RTT.
PathDelays make_path_delays(const RttSpec& rtt, double capacity_pps,
                            const std::vector<double>& empirical, Rng& rng);

struct PeerChoice {
    int peer;        // next destination
    bool reset_cwnd; // switching peers restarts the window at 1
};

/// Peer selection at a chunk boundary: keep the current peer with probability
/// `persistence`, otherwise pick uniformly among the inactive neighbors and
/// reset the window. An empty inactive list forces persistence.
PeerChoice pick_next_peer(int current_peer, const std::vector<int>& inactive,
                          double persistence, Rng& rng);

} // namespace fledbat
