#pragma once

#include <cstddef>
#include <vector>

#include "optlab/admodel/activation.hpp"
#include "optlab/numkit/rng.hpp"
#include "optlab/numkit/vector.hpp"

namespace optlab::admodel {

using numkit::Vector;

/// Truncated second-order Taylor triple with respect to one designated
/// scalar input coordinate.
struct Jet2 {
    double value = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
};

/// Feed-forward MLP architecture. Parameters are packed into one flat
/// vector: all weight matrices layer by layer (row-major), then all bias
/// vectors layer by layer.
struct MlpSpec {
    std::vector<std::size_t> layer_widths;  // d_in, hidden..., d_out
    Activation activation = Activation::Tanh;
    Activation output_activation = Activation::Identity;

    std::size_t depth() const { return layer_widths.size() - 1; }
    std::size_t input_dim() const { return layer_widths.front(); }
    std::size_t output_dim() const { return layer_widths.back(); }
    Activation layer_activation(std::size_t layer) const {
        return layer + 1 == depth() ? output_activation : activation;
    }

    std::size_t param_count() const;
    std::size_t weight_offset(std::size_t layer) const;
    std::size_t bias_offset(std::size_t layer) const;

    void validate() const;
};

/// Xavier/Glorot uniform weights with bound sqrt(6/(fan_in+fan_out));
/// biases zero.
Vector init_params(const MlpSpec& spec, numkit::RngStream& rng);

Vector forward(const MlpSpec& spec, const Vector& theta, const Vector& x);

/// ∇_θ (upstreamᵀ h_θ(x)) by reverse accumulation.
Vector param_gradient(const MlpSpec& spec, const Vector& theta, const Vector& x,
                      const Vector& upstream);

/// (h, ∂h/∂x_coord, ∂²h/∂x_coord²) per output, propagated exactly.
/// Requires a twice-differentiable activation.
std::vector<Jet2> input_jet(const MlpSpec& spec, const Vector& theta, const Vector& x,
                            std::size_t coord);

/// ∇_θ Σ_o (w_value_o·h_o + w_d1_o·∂h_o + w_d2_o·∂²h_o), the reverse pass
/// over the jet-forward computation. Exact; this is what PDE residual
/// gradients reduce to for linear operators of order ≤ 2.
Vector jet_param_gradient(const MlpSpec& spec, const Vector& theta, const Vector& x,
                          std::size_t coord, const Vector& w_value, const Vector& w_d1,
                          const Vector& w_d2);

}  // namespace optlab::admodel
