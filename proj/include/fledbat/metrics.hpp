#pragma once

#include <Eigen/Dense>
#include <map>
#include <optional>

#include "fledbat/trace.hpp"

namespace fledbat {

/// Jain fairness index F = (sum x)^2 / (N * sum x^2), in [1/N, 1].
/// The all-zero vector returns 1 by convention (an idle system is not
/// unfair). Rates must be nonnegative.
double jain_index(const Eigen::VectorXd& rates);

/// Link utilization: sum of rates over capacity, same units both sides.
double efficiency(const Eigen::VectorXd& rates, double capacity);

/// Bytes acked per flow over a measurement window.
struct RateSample {
    double t_start = 0.0;
    double t_end = 0.0;
    std::map<int, double> bytes;        // flow id -> bytes acked in window
    std::map<int, Protocol> protocol;   // flow id -> protocol

    double duration() const { return t_end - t_start; }
    double total_bytes() const;
};

/// Aggregates acked bytes over [discard, t_end] (t_end defaults to the trace
/// end). Every flow whose active interval intersects the window appears,
/// including starved flows at zero bytes. Throws std::invalid_argument when
/// the window is empty.
RateSample stationary_window(const SimulationTrace& trace, double discard,
                             double t_end = -1.0);

/// Per-flow rates in bytes/second, ordered by flow id (pairs with the key
/// order of RateSample::bytes).
Eigen::VectorXd rates_vector(const RateSample& sample);

/// Fraction of windowed traffic carried by flows of `protocol`. Empty when
/// the window carried no traffic at all.
std::optional<double> protocol_breakdown(const RateSample& sample, Protocol protocol);

/// Mean of the queue-occupancy samples falling in [t0, t1].
double mean_queue(const SimulationTrace& trace, double t0, double t1);

/// Mean measured queueing delay (owd minus final base estimate) over acks in
/// [t0, t1]; used for the Little's-law consistency check.
double mean_queueing_delay(const SimulationTrace& trace, double t0, double t1);

} // namespace fledbat
