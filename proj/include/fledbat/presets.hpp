#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fledbat/config.hpp"
#include "fledbat/fluid.hpp"

namespace fledbat {

/// One parameter point of an experiment: a scenario plus the id it reports
/// under in the summary (e.g. "zeta=0.1" or "n=4,zeta=0.2").
struct ScenarioPoint {
    std::string id;
    ScenarioConfig config;
};

/// A named experiment: one or more scenario points, optionally paired with a
/// fluid-model integration on the same parameters.
struct Preset {
    std::string name;
    std::string description;
    std::vector<ScenarioPoint> points;
    bool with_fluid = false;     // also integrate the rate/queue model
    bool write_series = false;   // emit per-run time-series CSVs
};

/// Known presets:
///   latecomer-ledbat   two ledbat flows, late join at 10 s, leave at 50 s
///   fluid-vs-sim       two fledbat flows 2 s apart, plus the model run
///   chunk-time         chunk traffic, zeta = 0.01, late join
///   backlogged-time    backlogged traffic, zeta = 5, late join
///   sens-tcp           fledbat vs reno over a log grid of zeta
///   sens-ledbat        fledbat vs ledbat over the same grid
///   sens-fledbat       fledbat vs fledbat over the same grid
///   fairness-vs-n      2..10 fledbat flows, staggered starts, zeta set
///   swarm-realistic    10-neighbor swarm, persistence sweep, both protocols
Preset preset(const std::string& name); // throws std::invalid_argument on unknown names

std::vector<std::string> preset_names();

/// Fluid parameters matching a homogeneous all-fledbat scenario. Throws when
/// the scenario cannot be expressed in the model (mixed protocols,
/// heterogeneous paths).
FluidParams fluid_params_for(const ScenarioConfig& config);

/// The zeta grid used by the sensitivity presets.
std::vector<double> zeta_grid();

} // namespace fledbat
