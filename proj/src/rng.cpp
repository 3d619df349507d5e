#include "fledbat/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace fledbat {

double Rng::exponential(double mean) {
    if (mean < 0.0)
        throw std::invalid_argument("Rng::exponential: negative mean");
    if (mean == 0.0)
        return 0.0;
    // next_unit() < 1, so the argument of log stays in (0, 1].
    return -mean * std::log(1.0 - next_unit());
}

std::size_t Rng::pick_index(std::size_t n) {
    if (n == 0)
        throw std::invalid_argument("Rng::pick_index: empty range");
    // Multiply-shift; bias is < 2^-53 for any n this simulator uses.
    return static_cast<std::size_t>(next_unit() * static_cast<double>(n));
}

} // namespace fledbat
