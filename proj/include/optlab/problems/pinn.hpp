#pragma once

#include <array>
#include <functional>
#include <memory>

#include "optlab/admodel/mlp.hpp"
#include "optlab/problems/objective.hpp"

namespace optlab::problems {

/// Linear differential operator N[h](x) = c0·h + c1·h′ + c2·h″ acting on a
/// scalar function of one variable, with source q. Coefficients default
/// to zero when unset.
struct PdeForm {
    int order = 2;  // highest derivative actually used, must be ≤ 2
    std::function<double(double)> c0;
    std::function<double(double)> c1;
    std::function<double(double)> c2;
    std::function<double(double)> source;
    std::function<double(double)> exact_solution;  // optional, for error reports

    void validate() const;
    double coeff0(double x) const { return c0 ? c0(x) : 0.0; }
    double coeff1(double x) const { return c1 ? c1(x) : 0.0; }
    double coeff2(double x) const { return c2 ? c2(x) : 0.0; }
    double q(double x) const { return source ? source(x) : 0.0; }
};

struct CollocationSet {
    std::vector<Vector> interior;
    Vector interior_weights;  // ξ_j ≥ 0 with Σξ = m_Ω; empty means uniform 1
    std::vector<Vector> dirichlet;
    Vector dirichlet_values;
    std::vector<Vector> neumann;
    Vector neumann_values;
    std::vector<Vector> neumann_normals;  // required when input dim > 1
    std::vector<Vector> data_points;
    Vector data_values;
    double gamma_interior = 1.0;
    double gamma_dirichlet = 1.0;
    double gamma_neumann = 1.0;
    double gamma_data = 1.0;

    std::size_t total_points() const {
        return interior.size() + dirichlet.size() + neumann.size() + data_points.size();
    }
    void validate() const;
};

/// Collocation empirical risk for a scalar MLP:
///   γ_Ω/m_Ω Σ ξ_j r_j² + γ_D/m_D Σ (h−g_D)² + γ_N/m_N Σ (∂_n h−g_N)²
///   + γ_data/m_data Σ (h−y)².
/// Per-sample terms are flattened interior → Dirichlet → Neumann → data.
/// Residuals/Jacobian rows carry the √(2·m·w_i) scaling so that the
/// least-squares identities of FiniteSumObjective hold exactly.
class PinnObjective : public FiniteSumObjective {
public:
    PinnObjective(admodel::MlpSpec net, CollocationSet colloc, PdeForm pde);

    std::size_t sample_count() const override { return colloc_.total_points(); }
    std::size_t dim() const override { return net_.param_count(); }
    double sample_value(std::size_t i, const Vector& theta) const override;
    Vector sample_gradient(std::size_t i, const Vector& theta) const override;

    bool has_jacobian() const override { return true; }
    Vector residuals(const Vector& theta) const override;
    Matrix jacobian(const Vector& theta) const override;

    /// Raw interior PDE residuals r_j(θ), unscaled.
    Vector interior_residuals(const Vector& theta) const;

    const admodel::MlpSpec& net() const { return net_; }
    const CollocationSet& collocation() const { return colloc_; }
    const PdeForm& pde() const { return pde_; }

    /// Sizes of the flattened groups: interior, Dirichlet, Neumann, data.
    std::array<std::size_t, 4> group_sizes() const;

    /// Replace interior points/weights (adaptive resampling).
    void set_interior(std::vector<Vector> points, Vector weights);

private:
    struct Term {
        double raw_residual = 0.0;  // unscaled misfit
        double weight = 0.0;        // quadratic weight w_i in the total value
    };
    Term term(std::size_t i, const Vector& theta) const;
    Vector term_gradient(std::size_t i, const Vector& theta) const;  // ∇ raw residual

    admodel::MlpSpec net_;
    CollocationSet colloc_;
    PdeForm pde_;
};

std::shared_ptr<PinnObjective> pinn_objective(admodel::MlpSpec net, CollocationSet colloc,
                                              PdeForm pde);

}  // namespace optlab::problems
