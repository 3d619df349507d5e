#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "fledbat/csv.hpp"
#include "fledbat/presets.hpp"
#include "fledbat/simulation.hpp"

namespace fledbat {

inline constexpr const char* kVersion = "fledbat-sim 0.1.0";

/// Summary metrics of one run over [measure_discard_s, duration]:
/// Jain fairness, link efficiency, fledbat traffic share (share of the first
/// flow's protocol when no fledbat flow exists), mean queue occupancy.
SummaryRow summarize(const std::string& scenario_id, const ScenarioConfig& config,
                     std::uint64_t seed, const SimulationTrace& trace);

struct RunOptions {
    std::filesystem::path out_dir;
    std::uint64_t seed_override = 0; // 0: keep the config seed
    int reps_override = 0;           // 0: keep the config repetitions
    bool quiet = false;
};

/// Runs every (point, seed) of the preset, writes summary.csv and
/// manifest.txt (plus per-run series and the fluid trajectory where the
/// preset asks for them), and returns the summary rows. Deterministic:
/// identical preset and seeds give byte-identical artifacts.
std::vector<SummaryRow> run_preset(const Preset& preset, const RunOptions& opts);

/// Aggregate of repeated runs of one scenario point.
struct Aggregate {
    std::string scenario_id;
    int n = 0;
    double fairness_mean = 0, fairness_std = 0;
    double efficiency_mean = 0, efficiency_std = 0;
    double breakdown_mean = 0, breakdown_std = 0;
    bool has_breakdown = false;
    double queue_mean = 0, queue_std = 0;
};

/// Mean and standard deviation per scenario id, in first-seen order.
std::vector<Aggregate> aggregate_rows(const std::vector<SummaryRow>& rows);

std::string format_report(const std::vector<Aggregate>& aggregates);

} // namespace fledbat
