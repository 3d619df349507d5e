#pragma once

// Shared generators for property suites: small random scenarios that run in
// milliseconds but still exercise every traffic mode and protocol mix.

#include "fledbat/config.hpp"
#include "fledbat/rng.hpp"

namespace fledbat::testsupport {

inline ScenarioConfig random_mini_config(Rng& rng) {
    ScenarioConfig c;
    c.flows.clear();
    c.link.capacity_bps = rng.uniform(2e6, 10e6);
    c.link.buffer_pkts = 20 + static_cast<int>(rng.pick_index(100));
    c.duration_s = rng.uniform(0.5, 2.0);
    c.sample_ms = 10.0;
    c.seed = 1;
    c.repetitions = 1;

    const int mode_pick = static_cast<int>(rng.pick_index(3));
    const Protocol protocols[] = {Protocol::Ledbat, Protocol::Fledbat, Protocol::Reno};
    if (mode_pick == 2) {
        c.traffic.mode = TrafficMode::Swarm;
        c.traffic.chunk_bytes = 30e3;
        c.traffic.swarm.n_neighbors = 4 + static_cast<int>(rng.pick_index(4));
        c.traffic.swarm.n_active = 2 + static_cast<int>(rng.pick_index(2));
        c.traffic.swarm.persistence = rng.uniform(0.0, 1.0);
        if (rng.next_unit() < 0.5)
            c.rtt.mode = RttMode::Heterogeneous;
        FlowSpec f;
        f.protocol = protocols[rng.pick_index(2)]; // delay-based template
        f.zeta = rng.uniform(0.01, 2.0);
        c.flows.push_back(f);
        return c;
    }

    c.traffic.mode = mode_pick == 0 ? TrafficMode::Backlogged : TrafficMode::ChunkByChunk;
    c.traffic.chunk_bytes = 30e3;
    const int n_flows = 1 + static_cast<int>(rng.pick_index(3));
    for (int i = 0; i < n_flows; ++i) {
        FlowSpec f;
        f.protocol = protocols[rng.pick_index(3)];
        f.start_s = rng.uniform(0.0, 0.3);
        f.zeta = rng.uniform(0.01, 2.0);
        if (rng.next_unit() < 0.2)
            f.stop_s = f.start_s + rng.uniform(0.2, 1.0);
        if (rng.next_unit() < 0.2)
            f.slow_start = true;
        c.flows.push_back(f);
    }
    return c;
}

} // namespace fledbat::testsupport
