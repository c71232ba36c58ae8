#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace optlab::firstorder {

/// Learning-rate schedule α_k.
struct StepSchedule {
    enum class Kind { Constant, PolynomialDecay, InverseSqrt };
    Kind kind = Kind::Constant;
    double alpha0 = 1e-3;
    double tau = 0.0;   // PolynomialDecay decay coefficient
    double power = 1.0; // PolynomialDecay exponent

    static StepSchedule constant(double alpha) { return {Kind::Constant, alpha, 0.0, 1.0}; }
    /// α_k = α₀ / (1 + τk)^pw
    static StepSchedule polynomial_decay(double alpha0, double tau, double power) {
        return {Kind::PolynomialDecay, alpha0, tau, power};
    }
    /// α_k = α₀ / sqrt(k+1)
    static StepSchedule inverse_sqrt(double alpha0) { return {Kind::InverseSqrt, alpha0, 0.0, 1.0}; }

    double at(std::size_t k) const {
        switch (kind) {
            case Kind::Constant: return alpha0;
            case Kind::PolynomialDecay:
                return alpha0 / std::pow(1.0 + tau * static_cast<double>(k), power);
            case Kind::InverseSqrt: return alpha0 / std::sqrt(static_cast<double>(k) + 1.0);
        }
        return alpha0;
    }
};

/// Mini-batch size schedule |I_k|.
struct BatchSchedule {
    enum class Kind { Fixed, LinearGrowth };
    Kind kind = Kind::Fixed;
    std::size_t b0 = 1;
    std::size_t bT = 1;
    std::size_t horizon = 1;  // T

    static BatchSchedule fixed(std::size_t b) { return {Kind::Fixed, b, b, 1}; }
    /// |I_k| = b0 + (k/T)(bT - b0), clamped to bT past the horizon.
    static BatchSchedule linear_growth(std::size_t b0, std::size_t bT, std::size_t T) {
        if (T == 0) throw std::invalid_argument("BatchSchedule: zero horizon");
        return {Kind::LinearGrowth, b0, bT, T};
    }

    std::size_t at(std::size_t k) const {
        if (kind == Kind::Fixed) return b0;
        if (k >= horizon) return bT;
        const double t = static_cast<double>(k) / static_cast<double>(horizon);
        return b0 + static_cast<std::size_t>(
                        std::llround(t * (static_cast<double>(bT) - static_cast<double>(b0))));
    }
};

}  // namespace optlab::firstorder
