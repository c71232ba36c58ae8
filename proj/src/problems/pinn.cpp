#include "optlab/problems/pinn.hpp"

#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace optlab::problems {

void PdeForm::validate() const {
    if (order < 1 || order > 2) throw std::invalid_argument("PdeForm: operator order must be 1 or 2");
}

void CollocationSet::validate() const {
    if (!interior_weights.empty()) {
        if (interior_weights.size() != interior.size())
            throw std::invalid_argument("CollocationSet: weight count mismatch");
        double sum = 0.0;
        for (std::size_t j = 0; j < interior_weights.size(); ++j) {
            if (interior_weights[j] < 0.0)
                throw std::invalid_argument("CollocationSet: negative point weight");
            sum += interior_weights[j];
        }
        if (std::abs(sum - static_cast<double>(interior.size())) > 1e-10)
            throw std::invalid_argument("CollocationSet: point weights must sum to m_interior");
    }
    if (dirichlet_values.size() != dirichlet.size() || neumann_values.size() != neumann.size() ||
        data_values.size() != data_points.size())
        throw std::invalid_argument("CollocationSet: value count mismatch");
    if (!neumann.empty() && !neumann.front().empty() && neumann.front().size() > 1 &&
        neumann_normals.size() != neumann.size())
        throw std::invalid_argument("CollocationSet: unit normals required per Neumann point");
}

PinnObjective::PinnObjective(admodel::MlpSpec net, CollocationSet colloc, PdeForm pde)
    : net_(std::move(net)), colloc_(std::move(colloc)), pde_(std::move(pde)) {
    net_.validate();
    pde_.validate();
    colloc_.validate();
    if (net_.output_dim() != 1) throw std::invalid_argument("pinn_objective: scalar output required");
    if (!admodel::twice_differentiable(net_.activation) ||
        !admodel::twice_differentiable(net_.output_activation))
        throw std::invalid_argument("pinn_objective: non-smooth activation");
    if (colloc_.interior.empty()) throw std::invalid_argument("pinn_objective: empty interior set");
    if (net_.input_dim() != 1 && !colloc_.interior.empty())
        throw std::invalid_argument("pinn_objective: interior residual supported for 1-D inputs");
}

std::array<std::size_t, 4> PinnObjective::group_sizes() const {
    return {colloc_.interior.size(), colloc_.dirichlet.size(), colloc_.neumann.size(),
            colloc_.data_points.size()};
}

void PinnObjective::set_interior(std::vector<Vector> points, Vector weights) {
    colloc_.interior = std::move(points);
    colloc_.interior_weights = std::move(weights);
    colloc_.validate();
    if (colloc_.interior.empty()) throw std::invalid_argument("pinn_objective: empty interior set");
}

PinnObjective::Term PinnObjective::term(std::size_t i, const Vector& theta) const {
    const auto sizes = group_sizes();
    Term t;
    if (i < sizes[0]) {
        const Vector& x = colloc_.interior[i];
        const auto jet = admodel::input_jet(net_, theta, x, 0)[0];
        const double xv = x[0];
        t.raw_residual = pde_.coeff0(xv) * jet.value + pde_.coeff1(xv) * jet.d1 +
                         pde_.coeff2(xv) * jet.d2 - pde_.q(xv);
        const double xi = colloc_.interior_weights.empty() ? 1.0 : colloc_.interior_weights[i];
        t.weight = colloc_.gamma_interior * xi / static_cast<double>(sizes[0]);
        return t;
    }
    i -= sizes[0];
    if (i < sizes[1]) {
        const double h = admodel::forward(net_, theta, colloc_.dirichlet[i])[0];
        t.raw_residual = h - colloc_.dirichlet_values[i];
        t.weight = colloc_.gamma_dirichlet / static_cast<double>(sizes[1]);
        return t;
    }
    i -= sizes[1];
    if (i < sizes[2]) {
        const Vector& x = colloc_.neumann[i];
        double dn = 0.0;
        if (x.size() == 1) {
            const double n = colloc_.neumann_normals.empty() ? 1.0 : colloc_.neumann_normals[i][0];
            dn = n * admodel::input_jet(net_, theta, x, 0)[0].d1;
        } else {
            for (std::size_t c = 0; c < x.size(); ++c)
                dn += colloc_.neumann_normals[i][c] * admodel::input_jet(net_, theta, x, c)[0].d1;
        }
        t.raw_residual = dn - colloc_.neumann_values[i];
        t.weight = colloc_.gamma_neumann / static_cast<double>(sizes[2]);
        return t;
    }
    i -= sizes[2];
    if (i < sizes[3]) {
        const double h = admodel::forward(net_, theta, colloc_.data_points[i])[0];
        t.raw_residual = h - colloc_.data_values[i];
        t.weight = colloc_.gamma_data / static_cast<double>(sizes[3]);
        return t;
    }
    throw std::out_of_range("pinn_objective: sample index out of range");
}

Vector PinnObjective::term_gradient(std::size_t i, const Vector& theta) const {
    const auto sizes = group_sizes();
    if (i < sizes[0]) {
        const Vector& x = colloc_.interior[i];
        const double xv = x[0];
        return admodel::jet_param_gradient(net_, theta, x, 0, Vector{pde_.coeff0(xv)},
                                           Vector{pde_.coeff1(xv)}, Vector{pde_.coeff2(xv)});
    }
    i -= sizes[0];
    if (i < sizes[1])
        return admodel::param_gradient(net_, theta, colloc_.dirichlet[i], Vector{1.0});
    i -= sizes[1];
    if (i < sizes[2]) {
        const Vector& x = colloc_.neumann[i];
        if (x.size() == 1) {
            const double n = colloc_.neumann_normals.empty() ? 1.0 : colloc_.neumann_normals[i][0];
            return admodel::jet_param_gradient(net_, theta, x, 0, Vector{0.0}, Vector{n},
                                               Vector{0.0});
        }
        Vector g(dim());
        for (std::size_t c = 0; c < x.size(); ++c) {
            g += admodel::jet_param_gradient(net_, theta, x, c, Vector{0.0},
                                             Vector{colloc_.neumann_normals[i][c]}, Vector{0.0});
        }
        return g;
    }
    i -= sizes[2];
    return admodel::param_gradient(net_, theta, colloc_.data_points[i], Vector{1.0});
}

double PinnObjective::sample_value(std::size_t i, const Vector& theta) const {
    const Term t = term(i, theta);
    return static_cast<double>(sample_count()) * t.weight * t.raw_residual * t.raw_residual;
}

Vector PinnObjective::sample_gradient(std::size_t i, const Vector& theta) const {
    const Term t = term(i, theta);
    Vector g = term_gradient(i, theta);
    g *= static_cast<double>(sample_count()) * t.weight * 2.0 * t.raw_residual;
    return g;
}

Vector PinnObjective::residuals(const Vector& theta) const {
    const std::size_t m = sample_count();
    Vector rho(m);
    const std::ptrdiff_t mm = static_cast<std::ptrdiff_t>(m);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < mm; ++i) {
        const Term t = term(static_cast<std::size_t>(i), theta);
        rho[static_cast<std::size_t>(i)] =
            std::sqrt(2.0 * static_cast<double>(m) * t.weight) * t.raw_residual;
    }
    return rho;
}

Matrix PinnObjective::jacobian(const Vector& theta) const {
    const std::size_t m = sample_count();
    Matrix J(m, dim());
    const std::ptrdiff_t mm = static_cast<std::ptrdiff_t>(m);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < mm; ++i) {
        const std::size_t k = static_cast<std::size_t>(i);
        const Term t = term(k, theta);
        Vector row = term_gradient(k, theta);
        row *= std::sqrt(2.0 * static_cast<double>(m) * t.weight);
        J.set_row(k, row);
    }
    return J;
}

Vector PinnObjective::interior_residuals(const Vector& theta) const {
    Vector r(colloc_.interior.size());
    const std::ptrdiff_t mm = static_cast<std::ptrdiff_t>(r.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t j = 0; j < mm; ++j)
        r[static_cast<std::size_t>(j)] = term(static_cast<std::size_t>(j), theta).raw_residual;
    return r;
}

std::shared_ptr<PinnObjective> pinn_objective(admodel::MlpSpec net, CollocationSet colloc,
                                              PdeForm pde) {
    return std::make_shared<PinnObjective>(std::move(net), std::move(colloc), std::move(pde));
}

}  // namespace optlab::problems
