#pragma once

#include <string>

#include "optlab/numkit/eigen.hpp"
#include "optlab/numkit/matrix.hpp"

namespace optlab::sampleweight {

using numkit::Matrix;
using numkit::Vector;

struct WeylCheckResult {
    Matrix theta_next;  // (m/(m+1))·Θ_m + (1/(m+1))·J·Jᵀ
    bool holds = true;  // λ_i(Θ_{m+1}) ≥ (m/(m+1))·λ_i(Θ_m) − 1e-12 for all i
    double worst_margin = 0.0;  // min over i of λ_i(next) − scaled λ_i(old)
};

/// Rank-one kernel growth never decreases any eigenvalue beyond the m/(m+1)
/// rescaling; a violation indicates an eigensolver defect. `m` is the
/// point count behind Θ_m (the kernel dimension is independent of it).
WeylCheckResult weyl_check(const Matrix& theta_m, const Vector& j_new, std::size_t m);

/// Closed-form eigenvalues of a symmetric 2×2 matrix (descending).
std::pair<double, double> eigenvalues_2x2(const Matrix& A);

/// Conditioning comparison of the two-parameter Poisson surrogate kernel
/// under uniform {0.1,0.3,0.5,0.7,0.9} and residual-refined
/// {0.1,0.3,0.5,0.7,0.85,0.9,0.95} collocation, computed exactly via the
/// 2×2 closed form. Reference magnitudes from the source study are carried
/// for side-by-side reporting; only the qualitative ordering is asserted
/// since the normalization behind those magnitudes is not reproducible
/// from the stated Jacobian convention.
struct PoissonSamplingStudy {
    Matrix theta5, theta7;
    double lambda_max_5 = 0.0, lambda_min_5 = 0.0, kappa_5 = 0.0;
    double lambda_max_7 = 0.0, lambda_min_7 = 0.0, kappa_7 = 0.0;
    // reference values reported alongside (approximate, different scaling)
    double ref_lambda_max_5 = 4.1, ref_lambda_min_5 = 0.02, ref_kappa_5 = 200.0;
    double ref_lambda_max_7 = 4.0, ref_lambda_min_7 = 0.30, ref_kappa_7 = 13.0;
    bool lambda_min_increases = false;
    bool kappa_decreases = false;
    double lambda_max_rel_change = 0.0;
    std::string discrepancy_note;
};

PoissonSamplingStudy poisson_sampling_study();

void save_study_json(const PoissonSamplingStudy& study, const std::string& path);

}  // namespace optlab::sampleweight
