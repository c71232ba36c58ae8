#pragma once

#include <string>

#include "optlab/firstorder/optimizers.hpp"
#include "optlab/numkit/eigen.hpp"
#include "optlab/problems/objective.hpp"

namespace optlab::kerneldx {

using numkit::EigenDecomposition;
using numkit::Matrix;
using numkit::Vector;
using problems::FiniteSumObjective;

enum class PreconditionerTag { Identity, AdamDiag, GaussNewton };

std::string to_string(PreconditionerTag tag);

/// Kernel matrix with spectrum diagnostics. κ is computed over the
/// numerically nonzero spectrum (floor 1e-12·λmax); the number of floored
/// modes is always reported since m > n makes the kernel rank-deficient by
/// construction.
struct KernelReport {
    Matrix theta_matrix;  // m×m
    EigenDecomposition eigen;
    double kappa = 0.0;
    std::size_t floored_modes = 0;
    double lambda_max = 0.0;
    double lambda_min_kept = 0.0;
    PreconditionerTag preconditioner_tag = PreconditionerTag::Identity;
    double damping = 0.0;  // β for GaussNewton
};

/// Θ = (1/m)·J·Jᵀ at θ.
KernelReport empirical_ntk(const FiniteSumObjective& obj, const Vector& theta);

/// Θ^(M) = (1/m)·J·M⁻¹·Jᵀ, assembled by solving M·X = Jᵀ column-block and
/// symmetrized as (Θ+Θᵀ)/2 before the eigendecomposition. M must be
/// symmetric positive definite.
KernelReport preconditioned_ntk(const FiniteSumObjective& obj, const Vector& theta,
                                const Matrix& M,
                                PreconditionerTag tag = PreconditionerTag::Identity,
                                double damping = 0.0);

/// M = (1/m)·JᵀJ + βI.
Matrix gauss_newton_preconditioner(const FiniteSumObjective& obj, const Vector& theta,
                                   double beta);

/// Effective Adam scaling at the current step: diagonal entries √v̂ + ε
/// with v̂ bias-corrected using beta2. Returns εI when the state has no
/// second-moment buffer yet.
Vector adam_diag_preconditioner(const firstorder::OptState& state, double eps,
                                double beta2 = 0.999);

Matrix diagonal_matrix(const Vector& diag);

/// Eigenvalue CSV `index,eigenvalue`, 17 significant digits.
void save_spectrum_csv(const KernelReport& report, const std::string& path);

}  // namespace optlab::kerneldx
