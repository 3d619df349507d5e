#include "fledbat/traffic.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include "fledbat/units.hpp"

namespace fledbat {

double sample_backward_delay(const RttSpec& rtt, const std::vector<double>& empirical,
                             Rng& rng) {
    if (rtt.mode != RttMode::Heterogeneous)
        throw std::logic_error("sample_backward_delay: homogeneous paths are derived, not drawn");
    if (!empirical.empty())
        return empirical[rng.pick_index(empirical.size())];
    const double draw = rng.exponential(ms(rtt.mean_backward_ms));
    return std::min(draw, ms(rtt.backward_cap_ms));
}

std::vector<double> load_empirical_delays(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open delay file '" + path + "'");
    std::vector<double> delays;
    std::string line;
    while (std::getline(in, line)) {
        const auto comment = line.find('#');
        if (comment != std::string::npos)
            line = line.substr(0, comment);
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        const double v = std::stod(line);
        if (v < 0.0)
            throw std::runtime_error("delay file '" + path + "': negative delay");
        delays.push_back(v);
    }
    if (delays.empty())
        throw std::runtime_error("delay file '" + path + "' holds no delays");
    return delays;
}

PathDelays make_path_delays(const RttSpec& rtt, double capacity_pps,
                            const std::vector<double>& empirical, Rng& rng) {
    PathDelays d;
    d.fwd_prop = ms(rtt.fwd_ms);
    if (rtt.mode == RttMode::Homogeneous) {
        // The return path absorbs the configured RTT minus the forward delay
        // and one transmission time.
        d.back_prop = std::max(0.0, ms(rtt.rtt_ms) - d.fwd_prop - 1.0 / capacity_pps);
    } else {
        d.back_prop = sample_backward_delay(rtt, empirical, rng);
    }
    return d;
}

PeerChoice pick_next_peer(int current_peer, const std::vector<int>& inactive,
                          double persistence, Rng& rng) {
    const double u = rng.next_unit();
    if (u < persistence || inactive.empty())
        return PeerChoice{current_peer, false};
    return PeerChoice{inactive[rng.pick_index(inactive.size())], true};
}

} // namespace fledbat
