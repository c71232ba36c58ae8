#include "optlab/sampleweight/study.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "optlab/problems/surrogate.hpp"

#include "json.hpp"

namespace optlab::sampleweight {

WeylCheckResult weyl_check(const Matrix& theta_m, const Vector& j_new, std::size_t m_points) {
    if (theta_m.rows() != theta_m.cols() || theta_m.rows() != j_new.size())
        throw std::invalid_argument("weyl_check: shape mismatch");
    if (m_points == 0) throw std::invalid_argument("weyl_check: zero point count");
    const double m = static_cast<double>(m_points);
    WeylCheckResult out;
    out.theta_next = theta_m;
    out.theta_next *= m / (m + 1.0);
    for (std::size_t i = 0; i < j_new.size(); ++i)
        for (std::size_t j = 0; j < j_new.size(); ++j)
            out.theta_next(i, j) += j_new[i] * j_new[j] / (m + 1.0);

    const numkit::EigenDecomposition before = numkit::sym_eigen(theta_m);
    const numkit::EigenDecomposition after = numkit::sym_eigen(out.theta_next);
    out.worst_margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < j_new.size(); ++i) {
        const double margin = after.eigenvalues[i] - (m / (m + 1.0)) * before.eigenvalues[i];
        out.worst_margin = std::min(out.worst_margin, margin);
    }
    out.holds = out.worst_margin >= -1e-12;
    return out;
}

std::pair<double, double> eigenvalues_2x2(const Matrix& A) {
    if (A.rows() != 2 || A.cols() != 2) throw std::invalid_argument("eigenvalues_2x2: not 2x2");
    const double tr = A(0, 0) + A(1, 1);
    const double det = A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0);
    const double disc = std::sqrt(std::max(tr * tr - 4.0 * det, 0.0));
    return {0.5 * (tr + disc), 0.5 * (tr - disc)};
}

namespace {

Matrix surrogate_kernel(const std::vector<double>& points) {
    // Θ_m = (1/m)·Σ J(x_j)·J(x_j)ᵀ with J(x) = [−φ₁″(x), −φ₂″(x)]
    Matrix theta(2, 2);
    for (double x : points) {
        const Vector J = problems::PoissonSurrogate::residual_jacobian_row(x);
        for (std::size_t a = 0; a < 2; ++a)
            for (std::size_t b = 0; b < 2; ++b) theta(a, b) += J[a] * J[b];
    }
    theta *= 1.0 / static_cast<double>(points.size());
    return theta;
}

}  // namespace

PoissonSamplingStudy poisson_sampling_study() {
    PoissonSamplingStudy study;
    const std::vector<double> uniform{0.1, 0.3, 0.5, 0.7, 0.9};
    const std::vector<double> refined{0.1, 0.3, 0.5, 0.7, 0.85, 0.9, 0.95};
    study.theta5 = surrogate_kernel(uniform);
    study.theta7 = surrogate_kernel(refined);

    const auto [l1_5, l2_5] = eigenvalues_2x2(study.theta5);
    const auto [l1_7, l2_7] = eigenvalues_2x2(study.theta7);
    study.lambda_max_5 = l1_5;
    study.lambda_min_5 = l2_5;
    study.kappa_5 = l1_5 / l2_5;
    study.lambda_max_7 = l1_7;
    study.lambda_min_7 = l2_7;
    study.kappa_7 = l1_7 / l2_7;

    study.lambda_min_increases = study.lambda_min_7 > study.lambda_min_5;
    study.kappa_decreases = study.kappa_7 < study.kappa_5;
    study.lambda_max_rel_change =
        std::abs(study.lambda_max_7 - study.lambda_max_5) / study.lambda_max_5;
    study.discrepancy_note =
        "computed with J(x) = [-phi1'', -phi2''] and Theta = (1/m) sum J J^T; the reference "
        "magnitudes (kappa ~200 -> ~13) use an unstated normalization and are reported for "
        "comparison only, the qualitative ordering is what is asserted";
    return study;
}

void save_study_json(const PoissonSamplingStudy& study, const std::string& path) {
    nlohmann::json j;
    j["uniform"] = {{"lambda_max", study.lambda_max_5},
                    {"lambda_min", study.lambda_min_5},
                    {"kappa", study.kappa_5}};
    j["refined"] = {{"lambda_max", study.lambda_max_7},
                    {"lambda_min", study.lambda_min_7},
                    {"kappa", study.kappa_7}};
    j["reference"] = {{"lambda_max_uniform", study.ref_lambda_max_5},
                      {"lambda_min_uniform", study.ref_lambda_min_5},
                      {"kappa_uniform", study.ref_kappa_5},
                      {"lambda_max_refined", study.ref_lambda_max_7},
                      {"lambda_min_refined", study.ref_lambda_min_7},
                      {"kappa_refined", study.ref_kappa_7}};
    j["lambda_min_increases"] = study.lambda_min_increases;
    j["kappa_decreases"] = study.kappa_decreases;
    j["lambda_max_rel_change"] = study.lambda_max_rel_change;
    j["documented_discrepancy"] = study.discrepancy_note;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_study_json: cannot open " + path);
    out << j.dump(2) << "\n";
}

}  // namespace optlab::sampleweight
