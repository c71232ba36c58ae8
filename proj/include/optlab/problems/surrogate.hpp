#pragma once

#include <memory>

#include "optlab/problems/objective.hpp"

namespace optlab::problems {

/// Two-parameter surrogate for the 1-D Poisson problem −u″ = f on (0,1)
/// with homogeneous Dirichlet conditions and localized forcing
/// f(x) = 10·exp(−100(x−0.9)²):
///   h(x;θ) = θ₁·x(1−x) + θ₂·x²(1−x)².
/// Both basis functions vanish at the boundary, so the objective is the
/// pure residual risk (1/m)·Σ ξ_j r_j² with r = −h″ − f.
class PoissonSurrogate : public FiniteSumObjective {
public:
    /// Uniform ξ ≡ 1 when weights is empty.
    explicit PoissonSurrogate(std::vector<double> points, Vector weights = Vector());

    static double forcing(double x);
    static double phi1(double x) { return x * (1.0 - x); }
    static double phi2(double x) { return x * x * (1.0 - x) * (1.0 - x); }
    static double phi1_dd(double) { return -2.0; }
    static double phi2_dd(double x) { return 2.0 - 12.0 * x + 12.0 * x * x; }

    /// r(x;θ) = −h″(x;θ) − f(x).
    static double residual(double x, const Vector& theta);
    /// ∇_θ r(x) = [−φ₁″(x), −φ₂″(x)], independent of θ.
    static Vector residual_jacobian_row(double x);

    std::size_t sample_count() const override { return points_.size(); }
    std::size_t dim() const override { return 2; }
    double sample_value(std::size_t i, const Vector& theta) const override;
    Vector sample_gradient(std::size_t i, const Vector& theta) const override;

    bool has_jacobian() const override { return true; }
    Vector residuals(const Vector& theta) const override;
    Matrix jacobian(const Vector& theta) const override;

    const std::vector<double>& points() const { return points_; }

private:
    double weight(std::size_t i) const { return weights_.empty() ? 1.0 : weights_[i]; }

    std::vector<double> points_;
    Vector weights_;
};

}  // namespace optlab::problems
