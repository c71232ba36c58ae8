#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace optlab::admodel {

enum class Activation { Tanh, Sigmoid, ReLU, Identity };

inline std::string to_string(Activation a) {
    switch (a) {
        case Activation::Tanh: return "tanh";
        case Activation::Sigmoid: return "sigmoid";
        case Activation::ReLU: return "relu";
        case Activation::Identity: return "identity";
    }
    return "?";
}

inline bool twice_differentiable(Activation a) { return a != Activation::ReLU; }

inline double act_value(Activation a, double v) {
    switch (a) {
        case Activation::Tanh: return std::tanh(v);
        case Activation::Sigmoid: return 1.0 / (1.0 + std::exp(-v));
        case Activation::ReLU: return v > 0.0 ? v : 0.0;
        case Activation::Identity: return v;
    }
    return 0.0;
}

/// First three derivatives evaluated together; t is the activation value
/// (reused so tanh/sigmoid derivatives need no second transcendental).
struct ActDerivs {
    double d1 = 0.0;
    double d2 = 0.0;
    double d3 = 0.0;
};

inline ActDerivs act_derivs(Activation a, double t) {
    ActDerivs d;
    switch (a) {
        case Activation::Tanh: {
            const double u = 1.0 - t * t;
            d.d1 = u;
            d.d2 = -2.0 * t * u;
            d.d3 = -2.0 * u * (1.0 - 3.0 * t * t);
            break;
        }
        case Activation::Sigmoid: {
            const double u = t * (1.0 - t);
            d.d1 = u;
            d.d2 = u * (1.0 - 2.0 * t);
            d.d3 = u * (1.0 - 2.0 * t) * (1.0 - 2.0 * t) - 2.0 * u * u;
            break;
        }
        case Activation::ReLU:
            d.d1 = t > 0.0 ? 1.0 : 0.0;
            break;
        case Activation::Identity:
            d.d1 = 1.0;
            break;
    }
    return d;
}

}  // namespace optlab::admodel
