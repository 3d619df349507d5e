#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fledbat/fluid.hpp"
#include "fledbat/trace.hpp"

namespace fledbat {

inline constexpr const char* kCsvSchemaVersion = "v1";

/// Per-update flow records: t,flow,cwnd,delta,dmin,acked,event.
void write_flow_series_csv(std::ostream& out, const SimulationTrace& trace);

/// Queue occupancy samples: t,queue_pkts.
void write_queue_csv(std::ostream& out, const SimulationTrace& trace);

/// Simulator rates resampled on the queue-sample grid, one column per flow
/// plus the queue, matching the fluid CSV layout exactly so the two overlay:
/// t,x0..x{N-1},queue_pkts. Rates are trailing-window averages in
/// packets/second.
void write_rates_csv(std::ostream& out, const SimulationTrace& trace, double window_s = 1.0);

/// Fluid trajectory on its sampling grid: t,x0..x{N-1},queue_pkts.
void write_fluid_csv(std::ostream& out, const std::vector<FluidState>& series);

struct SummaryRow {
    std::string scenario_id;
    std::uint64_t seed = 0;
    double fairness = 0.0;
    double efficiency = 0.0;
    std::optional<double> breakdown;
    double mean_queue_pkts = 0.0;
};

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);
std::vector<SummaryRow> read_summary_csv(std::istream& in);

std::string format_double(double v);

} // namespace fledbat
