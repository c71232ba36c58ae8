#pragma once

#include <functional>
#include <string>

#include "optlab/numkit/vector.hpp"

namespace optlab::sampleweight {

using numkit::Vector;

/// Residual-based point weights ξ_j = |r_j|^β / mean(|r|^β), so mean(ξ)=1
/// and Σξ = m. All-zero residuals fall back to uniform ξ ≡ 1.
Vector residual_point_weights(const Vector& residuals, double beta);

/// One per-loss term for weight balancing.
struct LossTerm {
    std::function<double(const Vector&)> value;
    std::function<Vector(const Vector&)> gradient;
};

/// One gradient-norm balancing update on the loss weights γ:
/// G_i = ‖γ_i∇R̂_i‖ is compared against Ḡ·r_iᶻ with Ḡ the mean of G_j and
/// r_i the relative training speed (R̂_i/R̂_i(0)) / mean_j(R̂_j/R̂_j(0));
/// one subgradient step on Σ|G_i − Ḡ·r_iᶻ| (targets held constant), then
/// renormalization to Σγ = N.
Vector gradnorm_update(const std::vector<LossTerm>& losses, const Vector& theta,
                       const Vector& gamma, const Vector& initial_losses, double zeta,
                       double step);

/// Weights CSV `j,xi`.
void save_weights_csv(const Vector& xi, const std::string& path);

}  // namespace optlab::sampleweight
