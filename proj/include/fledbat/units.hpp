#pragma once

namespace fledbat {

// Repo-wide unit conventions: time in seconds, windows and queue lengths in
// packets, rates in packets per second. Link capacities given in bits per
// second are converted at the config boundary with the scenario packet size.
constexpr double packets_per_second(double bits_per_second, int packet_bytes) {
    return bits_per_second / (8.0 * static_cast<double>(packet_bytes));
}

constexpr double ms(double milliseconds) { return milliseconds * 1e-3; }

} // namespace fledbat
