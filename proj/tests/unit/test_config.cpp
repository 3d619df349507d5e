#include <doctest.h>

#include <algorithm>

#include "fledbat/config.hpp"
#include "fledbat/presets.hpp"

using namespace fledbat;

TEST_CASE("defaults match the reference scenario") {
    ScenarioConfig c;
    CHECK(c.link.capacity_bps == 10e6);
    CHECK(c.link.buffer_pkts == 100);
    CHECK(c.link.packet_bytes == 1500);
    CHECK(c.capacity_pps() == doctest::Approx(833.3333).epsilon(1e-4));
    CHECK(c.rtt.rtt_ms == 50.0);
    CHECK(c.sample_ms == 10.0);
    CHECK(c.repetitions == 10);
    const FlowSpec f;
    CHECK(f.target_ms == 25.0);
    CHECK(f.alpha == 1.0);
    // 250 kB chunks are just under 167 full packets.
    CHECK(c.chunk_packets() == 167);
}

TEST_CASE("validation lists each violated constraint") {
    ScenarioConfig c;
    c.link.buffer_pkts = 0;
    c.duration_s = -1.0;
    const auto problems = validate(c);
    REQUIRE(problems.size() >= 3); // buffer, duration, discard-window
    CHECK(std::any_of(problems.begin(), problems.end(), [](const std::string& p) {
        return p.find("buffer_pkts") != std::string::npos;
    }));
    CHECK(std::any_of(problems.begin(), problems.end(), [](const std::string& p) {
        return p.find("duration_s") != std::string::npos;
    }));
}

TEST_CASE("parse accepts the documented grammar") {
    const ScenarioConfig c = parse_config(R"(
# reference two-flow scenario
link.capacity_bps = 10e6
link.buffer_pkts  = 100
flow.0.protocol = ledbat
flow.0.start_s = 0
flow.1.protocol = fledbat
flow.1.start_s = 10      # latecomer
flow.1.zeta = 0.5
traffic.mode = chunk
duration_s = 30
seed = 42
)");
    REQUIRE(c.flows.size() == 2);
    CHECK(c.flows[0].protocol == Protocol::Ledbat);
    CHECK(c.flows[1].protocol == Protocol::Fledbat);
    CHECK(c.flows[1].start_s == 10.0);
    CHECK(c.flows[1].zeta == 0.5);
    CHECK(c.traffic.mode == TrafficMode::ChunkByChunk);
    CHECK(c.seed == 42);
}

TEST_CASE("parse rejects unknown keys and bad values with a full report") {
    try {
        parse_config("link.capacity_bps = fast\nno.such.key = 1\nduration_s = 10\n"
                     "flow.0.protocol = fledbat\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.problems.size() == 2);
    }
}

TEST_CASE("validation failures surface as ConfigError") {
    CHECK_THROWS_AS((void)parse_config("flow.0.protocol = fledbat\nlink.buffer_pkts = 0\n"),
                    ConfigError);
}

TEST_CASE("emit and parse round-trip the config exactly") {
    ScenarioConfig c;
    c.flows.clear();
    FlowSpec f;
    f.protocol = Protocol::Ledbat;
    f.start_s = 1.25;
    f.start_jitter_s = 10.0;
    f.stop_s = 50.0;
    f.zeta = 0.031;
    c.flows.push_back(f);
    c.traffic.mode = TrafficMode::Swarm;
    c.traffic.swarm.persistence = 0.7;
    c.rtt.mode = RttMode::Heterogeneous;
    c.duration_s = 123.5;
    c.seed = 99;
    const ScenarioConfig back = parse_config(emit_config(c));
    CHECK(back == c);
}

TEST_CASE("every preset round-trips through the parser unchanged") {
    for (const std::string& name : preset_names()) {
        const Preset p = preset(name);
        CHECK(!p.points.empty());
        for (const ScenarioPoint& point : p.points) {
            CHECK(validate(point.config).empty());
            const ScenarioConfig back = parse_config(emit_config(point.config));
            CHECK(back == point.config);
        }
    }
}

TEST_CASE("unknown preset name") {
    CHECK_THROWS_AS((void)preset("no-such-preset"), std::invalid_argument);
}

TEST_CASE("preset structure matches the experiment definitions") {
    const Preset latecomer = preset("latecomer-ledbat");
    REQUIRE(latecomer.points.size() == 1);
    const ScenarioConfig& lc = latecomer.points[0].config;
    REQUIRE(lc.flows.size() == 2);
    CHECK(lc.flows[0].protocol == Protocol::Ledbat);
    CHECK(lc.flows[1].start_s == 10.0);
    CHECK(lc.flows[1].stop_s == 50.0);

    const Preset fvs = preset("fluid-vs-sim");
    CHECK(fvs.with_fluid);
    const ScenarioConfig& fc = fvs.points[0].config;
    CHECK(fc.flows[0].zeta == 0.1);
    CHECK(fc.flows[1].start_s == 2.0);

    const Preset fairness = preset("fairness-vs-n");
    CHECK(fairness.points.size() == 9 * 4);
    for (const ScenarioPoint& point : fairness.points) {
        const auto& flows = point.config.flows;
        for (std::size_t k = 0; k < flows.size(); ++k)
            CHECK(flows[k].start_s == 10.0 * static_cast<double>(k));
        CHECK(point.config.measure_discard_s ==
              flows.back().start_s + 10.0);
    }

    const Preset sens = preset("sens-tcp");
    CHECK(sens.points.size() == zeta_grid().size());

    const Preset swarm = preset("swarm-realistic");
    CHECK(swarm.points.size() == 2 * 2 * 11);
}
