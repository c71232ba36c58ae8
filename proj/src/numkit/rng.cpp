#include "optlab/numkit/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace optlab::numkit {

double RngStream::uniform(double lo, double hi) {
    if (!(lo < hi)) throw std::invalid_argument("uniform: requires lo < hi");
    return lo + (hi - lo) * next_unit();
}

double RngStream::normal(double mean, double sd) {
    if (sd < 0.0) throw std::invalid_argument("normal: sd must be >= 0");
    // Box-Muller on two fresh uniforms; no cached spare so the draw count
    // per call is fixed and the stream stays replayable.
    const double u1 = (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    const double u2 = next_unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return mean + sd * r * std::cos(2.0 * std::numbers::pi * u2);
}

std::size_t RngStream::choice(const Vector& weights) {
    double total = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] < 0.0) throw std::invalid_argument("choice: negative weight");
        total += weights[i];
    }
    if (total <= 0.0) throw std::invalid_argument("choice: weights sum to zero");
    const double u = total * next_unit();
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        acc += weights[i];
        if (u < acc) return i;
    }
    // u landed on the accumulated rounding tail; return last positive weight
    for (std::size_t i = weights.size(); i-- > 0;)
        if (weights[i] > 0.0) return i;
    return weights.size() - 1;
}

std::size_t RngStream::uniform_index(std::size_t n) {
    if (n == 0) throw std::invalid_argument("uniform_index: n must be positive");
    return static_cast<std::size_t>(next_unit() * static_cast<double>(n)) % n;
}

}  // namespace optlab::numkit
