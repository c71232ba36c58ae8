#pragma once

#include <functional>
#include <memory>

#include "optlab/numkit/rng.hpp"
#include "optlab/problems/objective.hpp"

namespace optlab::sampleweight {

using numkit::RngStream;
using numkit::Vector;
using problems::FiniteSumObjective;

/// Discrete sampling density over a finite candidate pool.
struct SamplingDensity {
    std::vector<Vector> candidate_pool;
    Vector probabilities;  // Σ = 1
    double beta = 1.0;
    std::size_t stage = 0;

    void validate() const;
};

/// Adaptive-collocation schedule: refresh the density from the residual
/// indicator every `cadence` optimizer iterations.
struct ResamplingConfig {
    std::size_t cadence = 500;  // T
    double beta = 1.0;
    std::size_t pool_points = 512;
    std::size_t draw_count = 64;
};

/// p_j ∝ η_jᵝ normalized over the pool (the integral becomes a discrete
/// sum on the candidate grid).
SamplingDensity update_density(std::vector<Vector> pool, const Vector& indicator, double beta,
                               std::size_t stage);

/// Uniform density over an equispaced 1-D grid of the given size (cell
/// midpoints of [lo,hi]).
SamplingDensity uniform_density_1d(std::size_t points, double lo = 0.0, double hi = 1.0);

/// Indices drawn from the density with replacement.
std::vector<std::size_t> draw_from_density(const SamplingDensity& density, std::size_t count,
                                           RngStream& rng);

/// Importance-weighted residual risk over drawn points:
///   R̂ = (1/m)·Σ_drawn (1/p_j)·r(x_j;θ)²,
/// which is unbiased for the full-pool uniform-density estimator.
class ImportanceWeightedRisk : public FiniteSumObjective {
public:
    using ResidualFn = std::function<double(const Vector& x, const Vector& theta)>;
    using ResidualGradFn = std::function<Vector(const Vector& x, const Vector& theta)>;

    ImportanceWeightedRisk(SamplingDensity density, std::vector<std::size_t> drawn,
                           ResidualFn residual, ResidualGradFn residual_gradient,
                           std::size_t param_dim);

    std::size_t sample_count() const override { return drawn_.size(); }
    std::size_t dim() const override { return param_dim_; }
    double sample_value(std::size_t i, const Vector& theta) const override;
    Vector sample_gradient(std::size_t i, const Vector& theta) const override;

    const SamplingDensity& density() const { return density_; }
    const std::vector<std::size_t>& drawn() const { return drawn_; }

private:
    SamplingDensity density_;
    std::vector<std::size_t> drawn_;
    ResidualFn residual_;
    ResidualGradFn residual_gradient_;
    std::size_t param_dim_;
};

/// Density CSV `x,p` (first pool coordinate), 17 significant digits.
void save_density_csv(const SamplingDensity& density, const std::string& path);

/// One resampling stage for a 1-D residual field: density ∝ |r|ᵝ over the
/// pool, `draw_count` interior points drawn from it with the unbiasing
/// 1/(M·p_j) quadrature weights rescaled to sum to the draw count.
struct ResampleResult {
    SamplingDensity density;
    std::vector<Vector> points;
    Vector weights;  // ξ, Σξ = draw count
};
ResampleResult resample_interior(const std::function<double(double)>& residual_abs,
                                 const ResamplingConfig& config, std::size_t stage,
                                 RngStream& rng);

}  // namespace optlab::sampleweight
