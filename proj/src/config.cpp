#include "fledbat/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace fledbat {

const char* to_string(TrafficMode m) {
    switch (m) {
    case TrafficMode::Backlogged: return "backlogged";
    case TrafficMode::ChunkByChunk: return "chunk";
    case TrafficMode::Swarm: return "swarm";
    }
    return "?";
}

const char* to_string(RttMode m) {
    return m == RttMode::Homogeneous ? "homogeneous" : "heterogeneous";
}

std::int64_t ScenarioConfig::chunk_packets() const {
    return static_cast<std::int64_t>(
        std::ceil(traffic.chunk_bytes / static_cast<double>(link.packet_bytes)));
}

std::vector<std::string> validate(const ScenarioConfig& c) {
    std::vector<std::string> problems;
    auto require = [&](bool ok, const std::string& msg) {
        if (!ok)
            problems.push_back(msg);
    };
    require(c.link.capacity_bps > 0, "link.capacity_bps must be positive");
    require(c.link.buffer_pkts > 0, "link.buffer_pkts must be positive");
    require(c.link.packet_bytes > 0, "link.packet_bytes must be positive");
    require(c.duration_s > 0, "duration_s must be positive");
    require(c.sample_ms > 0, "sample_ms must be positive");
    require(c.measure_discard_s >= 0, "measure_discard_s must be nonnegative");
    require(c.measure_discard_s < c.duration_s, "measure_discard_s must leave a measurement window");
    require(c.repetitions > 0, "repetitions must be positive");
    require(!c.flows.empty(), "at least one flow is required");
    for (std::size_t i = 0; i < c.flows.size(); ++i) {
        const FlowSpec& f = c.flows[i];
        const std::string k = "flow." + std::to_string(i) + ".";
        require(f.start_s >= 0, k + "start_s must be nonnegative");
        require(f.start_jitter_s >= 0, k + "start_jitter_s must be nonnegative");
        require(f.stop_s > f.start_s, k + "stop_s must exceed start_s");
        require(f.target_ms > 0, k + "target_ms must be positive");
        require(f.alpha > 0, k + "alpha must be positive");
        require(f.zeta > 0, k + "zeta must be positive");
    }
    require(c.traffic.chunk_bytes > 0, "traffic.chunk_bytes must be positive");
    if (c.traffic.mode == TrafficMode::Swarm) {
        require(c.traffic.swarm.n_neighbors > 0, "traffic.swarm.neighbors must be positive");
        require(c.traffic.swarm.n_active > 0, "traffic.swarm.active must be positive");
        require(c.traffic.swarm.n_active <= c.traffic.swarm.n_neighbors,
                "traffic.swarm.active must not exceed traffic.swarm.neighbors");
        require(c.traffic.swarm.persistence >= 0 && c.traffic.swarm.persistence <= 1,
                "traffic.swarm.persistence must lie in [0,1]");
        require(c.traffic.swarm.stagger_s >= 0, "traffic.swarm.stagger_s must be nonnegative");
        require(c.flows.size() == 1, "swarm mode takes exactly one template flow");
    }
    require(c.rtt.fwd_ms >= 0, "rtt.fwd_ms must be nonnegative");
    if (c.rtt.mode == RttMode::Homogeneous) {
        const double trans_ms = 1e3 / c.capacity_pps();
        require(c.rtt.rtt_ms >= c.rtt.fwd_ms + trans_ms,
                "rtt.rtt_ms must cover the forward delay plus one transmission time");
    } else {
        require(c.rtt.mean_backward_ms >= 0, "rtt.mean_backward_ms must be nonnegative");
        require(c.rtt.backward_cap_ms >= 0, "rtt.backward_cap_ms must be nonnegative");
    }
    return problems;
}

ConfigError::ConfigError(std::vector<std::string> p)
    : std::runtime_error(p.empty() ? "invalid config"
                                   : "invalid config: " + p.front() +
                                         (p.size() > 1 ? " (+" + std::to_string(p.size() - 1) +
                                                             " more)"
                                                       : "")),
      problems(std::move(p)) {}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value,
                    std::vector<std::string>& problems) {
    if (value == "inf")
        return std::numeric_limits<double>::infinity();
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size())
            throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        problems.push_back(key + ": cannot parse number '" + value + "'");
        return 0.0;
    }
}

std::int64_t parse_int(const std::string& key, const std::string& value,
                       std::vector<std::string>& problems) {
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        problems.push_back(key + ": cannot parse integer '" + value + "'");
        return 0;
    }
    return v;
}

bool parse_bool(const std::string& key, const std::string& value,
                std::vector<std::string>& problems) {
    if (value == "true" || value == "1")
        return true;
    if (value == "false" || value == "0")
        return false;
    problems.push_back(key + ": cannot parse boolean '" + value + "'");
    return false;
}

// Shortest round-trip decimal form, locale-independent.
std::string fmt(double v) {
    if (std::isinf(v))
        return "inf";
    char buf[32];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, end);
}

} // namespace

ScenarioConfig parse_config(const std::string& text) {
    ScenarioConfig c;
    c.flows.clear();
    std::vector<std::string> problems;
    std::map<std::size_t, FlowSpec> flows;

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto comment = line.find('#');
        if (comment != std::string::npos)
            line = line.substr(0, comment);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            problems.push_back("line " + std::to_string(lineno) + ": expected 'key = value'");
            continue;
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key.rfind("flow.", 0) == 0) {
            const auto rest = key.substr(5);
            const auto dot = rest.find('.');
            if (dot == std::string::npos) {
                problems.push_back(key + ": expected flow.<index>.<field>");
                continue;
            }
            std::size_t index = 0;
            const auto [p, ec] = std::from_chars(rest.data(), rest.data() + dot, index);
            if (ec != std::errc{} || p != rest.data() + dot) {
                problems.push_back(key + ": bad flow index");
                continue;
            }
            FlowSpec& f = flows[index];
            const std::string field = rest.substr(dot + 1);
            if (field == "protocol") {
                try {
                    f.protocol = protocol_from_string(value);
                } catch (const std::exception& e) {
                    problems.push_back(key + ": " + e.what());
                }
            } else if (field == "start_s") {
                f.start_s = parse_double(key, value, problems);
            } else if (field == "start_jitter_s") {
                f.start_jitter_s = parse_double(key, value, problems);
            } else if (field == "stop_s") {
                f.stop_s = parse_double(key, value, problems);
            } else if (field == "target_ms") {
                f.target_ms = parse_double(key, value, problems);
            } else if (field == "alpha") {
                f.alpha = parse_double(key, value, problems);
            } else if (field == "zeta") {
                f.zeta = parse_double(key, value, problems);
            } else if (field == "slow_start") {
                f.slow_start = parse_bool(key, value, problems);
            } else {
                problems.push_back(key + ": unknown flow field");
            }
            continue;
        }

        if (key == "link.capacity_bps") c.link.capacity_bps = parse_double(key, value, problems);
        else if (key == "link.buffer_pkts") c.link.buffer_pkts = static_cast<int>(parse_int(key, value, problems));
        else if (key == "link.packet_bytes") c.link.packet_bytes = static_cast<int>(parse_int(key, value, problems));
        else if (key == "traffic.mode") {
            if (value == "backlogged") c.traffic.mode = TrafficMode::Backlogged;
            else if (value == "chunk") c.traffic.mode = TrafficMode::ChunkByChunk;
            else if (value == "swarm") c.traffic.mode = TrafficMode::Swarm;
            else problems.push_back(key + ": unknown mode '" + value + "'");
        } else if (key == "traffic.chunk_bytes") c.traffic.chunk_bytes = parse_double(key, value, problems);
        else if (key == "traffic.swarm.neighbors") c.traffic.swarm.n_neighbors = static_cast<int>(parse_int(key, value, problems));
        else if (key == "traffic.swarm.active") c.traffic.swarm.n_active = static_cast<int>(parse_int(key, value, problems));
        else if (key == "traffic.swarm.persistence") c.traffic.swarm.persistence = parse_double(key, value, problems);
        else if (key == "traffic.swarm.stagger_s") c.traffic.swarm.stagger_s = parse_double(key, value, problems);
        else if (key == "rtt.mode") {
            if (value == "homogeneous") c.rtt.mode = RttMode::Homogeneous;
            else if (value == "heterogeneous") c.rtt.mode = RttMode::Heterogeneous;
            else problems.push_back(key + ": unknown mode '" + value + "'");
        } else if (key == "rtt.rtt_ms") c.rtt.rtt_ms = parse_double(key, value, problems);
        else if (key == "rtt.fwd_ms") c.rtt.fwd_ms = parse_double(key, value, problems);
        else if (key == "rtt.mean_backward_ms") c.rtt.mean_backward_ms = parse_double(key, value, problems);
        else if (key == "rtt.backward_cap_ms") c.rtt.backward_cap_ms = parse_double(key, value, problems);
        else if (key == "rtt.empirical_file") c.rtt.empirical_file = value;
        else if (key == "duration_s") c.duration_s = parse_double(key, value, problems);
        else if (key == "sample_ms") c.sample_ms = parse_double(key, value, problems);
        else if (key == "measure_discard_s") c.measure_discard_s = parse_double(key, value, problems);
        else if (key == "seed") c.seed = static_cast<std::uint64_t>(parse_int(key, value, problems));
        else if (key == "repetitions") c.repetitions = static_cast<int>(parse_int(key, value, problems));
        else if (key == "cc.ledbat_literal_eq2") c.ledbat_literal_gain = parse_bool(key, value, problems);
        else problems.push_back(key + ": unknown key");
    }

    for (std::size_t i = 0; i < flows.size(); ++i) {
        auto it = flows.find(i);
        if (it == flows.end()) {
            problems.push_back("flow indices must be contiguous from 0");
            break;
        }
        c.flows.push_back(it->second);
    }

    if (!problems.empty())
        throw ConfigError(std::move(problems));
    auto violations = validate(c);
    if (!violations.empty())
        throw ConfigError(std::move(violations));
    return c;
}

ScenarioConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError({"cannot open config file '" + path + "'"});
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string emit_config(const ScenarioConfig& c) {
    std::ostringstream out;
    out << "link.capacity_bps = " << fmt(c.link.capacity_bps) << "\n";
    out << "link.buffer_pkts = " << c.link.buffer_pkts << "\n";
    out << "link.packet_bytes = " << c.link.packet_bytes << "\n";
    for (std::size_t i = 0; i < c.flows.size(); ++i) {
        const FlowSpec& f = c.flows[i];
        const std::string k = "flow." + std::to_string(i) + ".";
        out << k << "protocol = " << to_string(f.protocol) << "\n";
        out << k << "start_s = " << fmt(f.start_s) << "\n";
        if (f.start_jitter_s != 0.0)
            out << k << "start_jitter_s = " << fmt(f.start_jitter_s) << "\n";
        if (f.stop_s != std::numeric_limits<double>::infinity())
            out << k << "stop_s = " << fmt(f.stop_s) << "\n";
        out << k << "target_ms = " << fmt(f.target_ms) << "\n";
        out << k << "alpha = " << fmt(f.alpha) << "\n";
        out << k << "zeta = " << fmt(f.zeta) << "\n";
        if (f.slow_start)
            out << k << "slow_start = true\n";
    }
    out << "traffic.mode = " << to_string(c.traffic.mode) << "\n";
    out << "traffic.chunk_bytes = " << fmt(c.traffic.chunk_bytes) << "\n";
    if (c.traffic.mode == TrafficMode::Swarm) {
        out << "traffic.swarm.neighbors = " << c.traffic.swarm.n_neighbors << "\n";
        out << "traffic.swarm.active = " << c.traffic.swarm.n_active << "\n";
        out << "traffic.swarm.persistence = " << fmt(c.traffic.swarm.persistence) << "\n";
        out << "traffic.swarm.stagger_s = " << fmt(c.traffic.swarm.stagger_s) << "\n";
    }
    out << "rtt.mode = " << to_string(c.rtt.mode) << "\n";
    out << "rtt.rtt_ms = " << fmt(c.rtt.rtt_ms) << "\n";
    out << "rtt.fwd_ms = " << fmt(c.rtt.fwd_ms) << "\n";
    if (c.rtt.mode == RttMode::Heterogeneous) {
        out << "rtt.mean_backward_ms = " << fmt(c.rtt.mean_backward_ms) << "\n";
        out << "rtt.backward_cap_ms = " << fmt(c.rtt.backward_cap_ms) << "\n";
        if (!c.rtt.empirical_file.empty())
            out << "rtt.empirical_file = " << c.rtt.empirical_file << "\n";
    }
    out << "duration_s = " << fmt(c.duration_s) << "\n";
    out << "sample_ms = " << fmt(c.sample_ms) << "\n";
    out << "measure_discard_s = " << fmt(c.measure_discard_s) << "\n";
    out << "seed = " << c.seed << "\n";
    out << "repetitions = " << c.repetitions << "\n";
    if (c.ledbat_literal_gain)
        out << "cc.ledbat_literal_eq2 = true\n";
    return out.str();
}

bool operator==(const LinkSpec& a, const LinkSpec& b) {
    return a.capacity_bps == b.capacity_bps && a.buffer_pkts == b.buffer_pkts &&
           a.packet_bytes == b.packet_bytes;
}
bool operator==(const FlowSpec& a, const FlowSpec& b) {
    return a.protocol == b.protocol && a.start_s == b.start_s &&
           a.start_jitter_s == b.start_jitter_s && a.stop_s == b.stop_s &&
           a.target_ms == b.target_ms && a.alpha == b.alpha && a.zeta == b.zeta &&
           a.slow_start == b.slow_start;
}
bool operator==(const SwarmSpec& a, const SwarmSpec& b) {
    return a.n_neighbors == b.n_neighbors && a.n_active == b.n_active &&
           a.persistence == b.persistence && a.stagger_s == b.stagger_s;
}
bool operator==(const TrafficSpec& a, const TrafficSpec& b) {
    return a.mode == b.mode && a.chunk_bytes == b.chunk_bytes && a.swarm == b.swarm;
}
bool operator==(const RttSpec& a, const RttSpec& b) {
    return a.mode == b.mode && a.rtt_ms == b.rtt_ms && a.fwd_ms == b.fwd_ms &&
           a.mean_backward_ms == b.mean_backward_ms && a.backward_cap_ms == b.backward_cap_ms &&
           a.empirical_file == b.empirical_file;
}
bool operator==(const ScenarioConfig& a, const ScenarioConfig& b) {
    return a.link == b.link && a.flows == b.flows && a.traffic == b.traffic && a.rtt == b.rtt &&
           a.duration_s == b.duration_s && a.sample_ms == b.sample_ms &&
           a.measure_discard_s == b.measure_discard_s && a.seed == b.seed &&
           a.repetitions == b.repetitions && a.ledbat_literal_gain == b.ledbat_literal_gain;
}

} // namespace fledbat
