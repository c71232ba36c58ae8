#include "optlab/kerneldx/ntk.hpp"

#include <fstream>
#include <stdexcept>

namespace optlab::kerneldx {

std::string to_string(PreconditionerTag tag) {
    switch (tag) {
        case PreconditionerTag::Identity: return "identity";
        case PreconditionerTag::AdamDiag: return "adam_diag";
        case PreconditionerTag::GaussNewton: return "gauss_newton";
    }
    return "?";
}

namespace {

void attach_spectrum(KernelReport& report) {
    report.eigen = numkit::sym_eigen(report.theta_matrix);
    const numkit::FlooredCondition fc = numkit::condition_number_floored(report.eigen);
    report.kappa = fc.kappa;
    report.floored_modes = fc.floored_modes;
    report.lambda_max = fc.lambda_max;
    report.lambda_min_kept = fc.lambda_min_kept;
}

}  // namespace

KernelReport empirical_ntk(const FiniteSumObjective& obj, const Vector& theta) {
    if (obj.sample_count() == 0) throw std::invalid_argument("empirical_ntk: no samples");
    if (!obj.has_jacobian()) throw std::invalid_argument("empirical_ntk: Jacobian required");
    const Matrix J = obj.jacobian(theta);
    KernelReport report;
    report.theta_matrix = numkit::gram_rows(J, 1.0 / static_cast<double>(obj.sample_count()));
    report.preconditioner_tag = PreconditionerTag::Identity;
    attach_spectrum(report);
    return report;
}

KernelReport preconditioned_ntk(const FiniteSumObjective& obj, const Vector& theta,
                                const Matrix& M, PreconditionerTag tag, double damping) {
    if (!obj.has_jacobian()) throw std::invalid_argument("preconditioned_ntk: Jacobian required");
    const Matrix J = obj.jacobian(theta);
    const std::size_t m = J.rows();
    const std::size_t n = J.cols();
    if (M.rows() != n || M.cols() != n)
        throw std::invalid_argument("preconditioned_ntk: preconditioner shape mismatch");
    if (!numkit::is_symmetric(M, 1e-10))
        throw std::invalid_argument("preconditioned_ntk: preconditioner not symmetric");

    Matrix L = M;
    try {
        numkit::cholesky_factor(L);
    } catch (const std::runtime_error&) {
        throw std::runtime_error("preconditioned_ntk: singular preconditioner");
    }

    // X = M⁻¹Jᵀ, one solve per kernel column
    Matrix X(n, m);
    for (std::size_t i = 0; i < m; ++i) {
        const Vector x = numkit::cholesky_solve(L, J.row(i));
        for (std::size_t r = 0; r < n; ++r) X(r, i) = x[r];
    }
    Matrix Theta = numkit::matmul(J, X);
    Theta *= 1.0 / static_cast<double>(m);
    // exact algebra is symmetric; round-off from the solves is not
    Matrix sym(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) sym(i, j) = 0.5 * (Theta(i, j) + Theta(j, i));

    KernelReport report;
    report.theta_matrix = std::move(sym);
    report.preconditioner_tag = tag;
    report.damping = damping;
    attach_spectrum(report);
    return report;
}

Matrix gauss_newton_preconditioner(const FiniteSumObjective& obj, const Vector& theta,
                                   double beta) {
    if (!obj.has_jacobian())
        throw std::invalid_argument("gauss_newton_preconditioner: Jacobian required");
    const Matrix J = obj.jacobian(theta);
    Matrix M = numkit::gram_cols(J, 1.0 / static_cast<double>(J.rows()));
    for (std::size_t i = 0; i < M.rows(); ++i) M(i, i) += beta;
    return M;
}

Vector adam_diag_preconditioner(const firstorder::OptState& state, double eps, double beta2) {
    if (eps <= 0.0) throw std::invalid_argument("adam_diag_preconditioner: eps must be positive");
    Vector d(state.theta.size(), eps);
    if (!state.adam_v.empty()) {
        const double t = static_cast<double>(state.k);
        const double c2 = t > 0.0 ? 1.0 - std::pow(beta2, t) : 1.0;
        for (std::size_t i = 0; i < d.size(); ++i)
            d[i] = std::sqrt(state.adam_v[i] / (c2 > 0.0 ? c2 : 1.0)) + eps;
    }
    return d;
}

Matrix diagonal_matrix(const Vector& diag) {
    Matrix M(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) M(i, i) = diag[i];
    return M;
}

void save_spectrum_csv(const KernelReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_spectrum_csv: cannot open " + path);
    out.precision(17);
    out << "index,eigenvalue\n";
    for (std::size_t i = 0; i < report.eigen.eigenvalues.size(); ++i)
        out << i << "," << report.eigen.eigenvalues[i] << "\n";
}

}  // namespace optlab::kerneldx
