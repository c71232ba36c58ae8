#pragma once

#include "optlab/sampleweight/weights.hpp"

namespace optlab::sampleweight {

struct HypergradientResult {
    Vector hypergradient;  // ∂C/∂γ_j = −(∇_θC)ᵀ·H⁻¹·∇_θR̂_j at the inner optimum
    bool stationary = true;  // ‖∇_θ Σγ_iR̂_i(θ*)‖ ≤ tolerance
    double inner_grad_norm = 0.0;
};

/// Implicit differentiation of the bilevel weight-selection problem at the
/// inner optimum θ*. H = ∇²_θ(Σγ_iR̂_i)(θ*) is assembled by central
/// differences of the inner gradient (step 1e-5·(1+|θ_i|)); a singular H
/// throws, a non-stationary θ* only flags the result.
HypergradientResult bilevel_hypergradient(const std::vector<LossTerm>& inner,
                                          const LossTerm& outer, const Vector& theta_star,
                                          const Vector& gamma,
                                          double stationarity_tol = 1e-6);

}  // namespace optlab::sampleweight
