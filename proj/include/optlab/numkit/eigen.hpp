#pragma once

#include "optlab/numkit/matrix.hpp"
#include "optlab/numkit/vector.hpp"

namespace optlab::numkit {

/// Eigenvalues sorted descending; eigenvector columns paired with them.
struct EigenDecomposition {
    Vector eigenvalues;
    Matrix eigenvectors;
};

/// Symmetric eigendecomposition by cyclic Jacobi rotations.
/// Sweeps until the largest off-diagonal entry drops below 1e-12·‖A‖_F,
/// capped at 100 sweeps.
EigenDecomposition sym_eigen(const Matrix& A);

/// λmax/λmin of a positive-definite spectrum. Throws when
/// λmin ≤ 1e-14·λmax (numerically singular).
double condition_number(const EigenDecomposition& d);

/// Condition number over the numerically nonzero part of the spectrum:
/// eigenvalues below floor_rel·λmax are discarded and counted.
struct FlooredCondition {
    double kappa = 0.0;
    std::size_t floored_modes = 0;
    double lambda_max = 0.0;
    double lambda_min_kept = 0.0;
};
FlooredCondition condition_number_floored(const EigenDecomposition& d, double floor_rel = 1e-12);

}  // namespace optlab::numkit
