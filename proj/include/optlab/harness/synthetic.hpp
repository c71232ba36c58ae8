#pragma once

#include <memory>

#include "optlab/numkit/rng.hpp"
#include "optlab/problems/objective.hpp"

namespace optlab::harness {

using numkit::RngStream;
using numkit::Vector;

/// Quadratic finite sum with exactly known optimum and gradient noise:
///   f_i(θ) = ½·θᵀ·diag(λ)·θ − (b + ε_i)ᵀθ,   Σ_i ε_i = 0,
/// so f(θ) = ½θᵀAθ − bᵀθ, ∇f_i − ∇f = −ε_i, and the gradient-estimate
/// variance σ² = (1/m)Σ‖ε_i‖² is a computed constant rather than a bound.
class SyntheticQuadratic : public problems::FiniteSumObjective {
public:
    /// Per-coordinate noise sd is sigma_target/√n so that E‖ε‖² ≈ σ²;
    /// the realized σ² is exact and available via sigma_sq().
    SyntheticQuadratic(Vector lambdas, Vector b, std::size_t samples, double sigma_target,
                       std::uint64_t seed);

    std::size_t sample_count() const override { return shifts_.size(); }
    std::size_t dim() const override { return lambdas_.size(); }
    double sample_value(std::size_t i, const Vector& theta) const override;
    Vector sample_gradient(std::size_t i, const Vector& theta) const override;
    double value(const Vector& theta) const override;
    Vector gradient(const Vector& theta) const override;

    Vector theta_star() const;
    double f_star() const;
    double mu() const;     // min λ
    double l_max() const;  // max λ (each f_i shares the Hessian diag(λ))
    double sigma_sq() const { return sigma_sq_; }
    /// Per-coordinate noise second moments (1/m)Σ ε_{i,c}², for exact
    /// steady-state predictions.
    const Vector& noise_var_per_coord() const { return noise_var_; }
    const Vector& lambdas() const { return lambdas_; }

private:
    Vector lambdas_;
    Vector b_;
    std::vector<Vector> shifts_;  // ε_i
    double sigma_sq_ = 0.0;
    Vector noise_var_;
};

/// diag(1,10) with b = 0 — the strongly convex testbed.
std::shared_ptr<SyntheticQuadratic> quadratic_1_10(double sigma_target, std::size_t samples = 64,
                                                   std::uint64_t seed = 11);

/// Log-spaced spectrum λ ∈ [1e-4, 1] over `dim` coordinates: effectively
/// flat directions at the horizons of interest, the convex-rate testbed.
std::shared_ptr<SyntheticQuadratic> quadratic_logspaced(std::size_t dim, double sigma_target,
                                                        std::size_t samples = 64,
                                                        std::uint64_t seed = 12);

}  // namespace optlab::harness
