#include "fledbat/presets.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace fledbat {

namespace {

std::string num(double v) {
    char buf[32];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, end);
}

FlowSpec flow(Protocol p, double start, double zeta = 0.1) {
    FlowSpec f;
    f.protocol = p;
    f.start_s = start;
    f.zeta = zeta;
    return f;
}

ScenarioConfig reference_scenario() {
    ScenarioConfig c; // defaults are the reference link: 10 Mbps, B=100, P=1500
    c.flows.clear();
    return c;
}

Preset latecomer_ledbat() {
    Preset p;
    p.name = "latecomer-ledbat";
    p.description = "two ledbat flows; the latecomer joins at 10 s and leaves at 50 s";
    ScenarioConfig c = reference_scenario();
    c.traffic.mode = TrafficMode::Backlogged;
    c.flows.push_back(flow(Protocol::Ledbat, 0.0));
    FlowSpec late = flow(Protocol::Ledbat, 10.0);
    late.stop_s = 50.0;
    c.flows.push_back(late);
    c.duration_s = 100.0;
    c.measure_discard_s = 20.0;
    p.points.push_back(ScenarioPoint{"latecomer", c});
    p.write_series = true;
    return p;
}

Preset fluid_vs_sim() {
    Preset p;
    p.name = "fluid-vs-sim";
    p.description = "two fledbat flows 2 s apart, packet level and fluid model side by side";
    ScenarioConfig c = reference_scenario();
    c.traffic.mode = TrafficMode::Backlogged;
    c.flows.push_back(flow(Protocol::Fledbat, 0.0, 0.1));
    c.flows.push_back(flow(Protocol::Fledbat, 2.0, 0.1));
    c.duration_s = 60.0;
    c.measure_discard_s = 20.0;
    p.points.push_back(ScenarioPoint{"fluid-vs-sim", c});
    p.with_fluid = true;
    p.write_series = true;
    return p;
}

Preset time_evolution(const std::string& name, TrafficMode mode, double zeta) {
    Preset p;
    p.name = name;
    p.description = std::string("two fledbat flows, ") + to_string(mode) +
                    " traffic, zeta=" + num(zeta) + ", late join at 10 s";
    ScenarioConfig c = reference_scenario();
    c.traffic.mode = mode;
    c.flows.push_back(flow(Protocol::Fledbat, 0.0, zeta));
    c.flows.push_back(flow(Protocol::Fledbat, 10.0, zeta));
    c.duration_s = 120.0;
    c.measure_discard_s = 20.0;
    p.points.push_back(ScenarioPoint{name, c});
    p.write_series = true;
    return p;
}

Preset sensitivity(const std::string& name, Protocol opponent) {
    Preset p;
    p.name = name;
    // The TCP matchup runs backlogged: chunk pauses idle the link for tens of
    // milliseconds per chunk and cap utilization near 0.8 no matter what the
    // delay-based flow does.
    const TrafficMode mode =
        opponent == Protocol::Reno ? TrafficMode::Backlogged : TrafficMode::ChunkByChunk;
    p.description = std::string("fledbat vs ") + to_string(opponent) +
                    " across the zeta grid, " + to_string(mode) + " traffic";
    for (double z : zeta_grid()) {
        ScenarioConfig c = reference_scenario();
        c.traffic.mode = mode;
        FlowSpec rival = flow(opponent, 0.0, z);
        FlowSpec mine = flow(Protocol::Fledbat, 0.0, z);
        if (opponent == Protocol::Fledbat) {
            // Worst case for fairness: a fixed 10 s late join.
            mine.start_s = 10.0;
        } else {
            // Both start at a uniformly random time in [0, 10) each run, so
            // either protocol can be the latecomer.
            rival.start_jitter_s = 10.0;
            mine.start_jitter_s = 10.0;
        }
        c.flows.push_back(rival);
        c.flows.push_back(mine);
        c.duration_s = 120.0;
        c.measure_discard_s = 20.0;
        p.points.push_back(ScenarioPoint{"zeta=" + num(z), c});
    }
    return p;
}

Preset fairness_vs_n() {
    Preset p;
    p.name = "fairness-vs-n";
    p.description = "2..10 fledbat flows arriving 10 s apart, fairness after the last arrival";
    for (int n = 2; n <= 10; ++n) {
        for (double z : {0.01, 0.1, 0.2, 0.5}) {
            ScenarioConfig c = reference_scenario();
            c.traffic.mode = TrafficMode::ChunkByChunk;
            for (int k = 0; k < n; ++k)
                c.flows.push_back(flow(Protocol::Fledbat, 10.0 * k, z));
            const double last_start = 10.0 * (n - 1);
            c.duration_s = last_start + 70.0;
            c.measure_discard_s = last_start + 10.0;
            p.points.push_back(ScenarioPoint{"n=" + std::to_string(n) + ",zeta=" + num(z), c});
        }
    }
    return p;
}

Preset swarm_realistic() {
    Preset p;
    p.name = "swarm-realistic";
    p.description = "10-neighbor swarm, 5 active, persistence sweep, fledbat vs ledbat";
    for (Protocol proto : {Protocol::Fledbat, Protocol::Ledbat}) {
        for (RttMode rtt_mode : {RttMode::Homogeneous, RttMode::Heterogeneous}) {
            for (int i = 0; i <= 10; ++i) {
                const double pp = static_cast<double>(i) / 10.0;
                ScenarioConfig c = reference_scenario();
                c.traffic.mode = TrafficMode::Swarm;
                c.traffic.swarm.n_neighbors = 10;
                c.traffic.swarm.n_active = 5;
                c.traffic.swarm.persistence = pp;
                c.rtt.mode = rtt_mode;
                c.flows.push_back(flow(proto, 0.0, 0.1));
                c.duration_s = 120.0;
                c.measure_discard_s = 20.0;
                p.points.push_back(ScenarioPoint{std::string(to_string(proto)) + "," +
                                                     to_string(rtt_mode) + ",pp=" + num(pp),
                                                 c});
            }
        }
    }
    return p;
}

} // namespace

std::vector<double> zeta_grid() {
    // Half-decade log grid over [1e-4, 10], densified around the fledbat /
    // ledbat crossover.
    return {1e-4, 3.16e-4, 1e-3, 3.16e-3, 1e-2, 3.16e-2, 0.1, 0.316, 1.0, 2.0, 3.16, 5.0, 10.0};
}

Preset preset(const std::string& name) {
    if (name == "latecomer-ledbat")
        return latecomer_ledbat();
    if (name == "fluid-vs-sim")
        return fluid_vs_sim();
    if (name == "chunk-time")
        return time_evolution("chunk-time", TrafficMode::ChunkByChunk, 0.01);
    if (name == "backlogged-time")
        return time_evolution("backlogged-time", TrafficMode::Backlogged, 5.0);
    if (name == "sens-tcp")
        return sensitivity("sens-tcp", Protocol::Reno);
    if (name == "sens-ledbat")
        return sensitivity("sens-ledbat", Protocol::Ledbat);
    if (name == "sens-fledbat")
        return sensitivity("sens-fledbat", Protocol::Fledbat);
    if (name == "fairness-vs-n")
        return fairness_vs_n();
    if (name == "swarm-realistic")
        return swarm_realistic();
    throw std::invalid_argument("unknown preset '" + name + "'");
}

std::vector<std::string> preset_names() {
    return {"latecomer-ledbat", "fluid-vs-sim",  "chunk-time",    "backlogged-time", "sens-tcp",
            "sens-ledbat",      "sens-fledbat",  "fairness-vs-n", "swarm-realistic"};
}

FluidParams fluid_params_for(const ScenarioConfig& config) {
    if (config.rtt.mode != RttMode::Homogeneous)
        throw std::invalid_argument("fluid model needs homogeneous round-trip times");
    if (config.flows.empty())
        throw std::invalid_argument("fluid model needs at least one flow");
    FluidParams p;
    p.n_flows = static_cast<int>(config.flows.size());
    p.capacity = config.capacity_pps();
    p.rtt = ms(config.rtt.rtt_ms);
    const FlowSpec& first = config.flows.front();
    p.target = ms(first.target_ms);
    p.alpha = first.alpha;
    p.zeta = first.zeta;
    for (const FlowSpec& f : config.flows) {
        if (f.protocol != Protocol::Fledbat)
            throw std::invalid_argument("fluid model covers fledbat flows only");
        if (f.target_ms != first.target_ms || f.alpha != first.alpha || f.zeta != first.zeta)
            throw std::invalid_argument("fluid model needs homogeneous flow parameters");
        p.start_times.push_back(f.start_s);
    }
    return p;
}

} // namespace fledbat
