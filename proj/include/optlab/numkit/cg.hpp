#pragma once

#include <functional>

#include "optlab/numkit/vector.hpp"

namespace optlab::numkit {

enum class CgFlag { Converged, NegativeCurvature, MaxIterations };

struct CgResult {
    Vector x;
    int iterations = 0;
    CgFlag flag = CgFlag::Converged;
};

using LinearOperator = std::function<Vector(const Vector&)>;

/// Conjugate gradient on a symmetric system A x = b, matrix-free.
/// Stops at ‖Ax − b‖ ≤ tol·‖b‖. When a direction of nonpositive curvature
/// dᵀ(Ad) ≤ 0 is met, returns the current iterate (Steihaug-style
/// truncation); if that happens on the first iteration the result is b
/// itself, i.e. a steepest-descent step for the outer solver.
CgResult cg_solve(const LinearOperator& apply_A, const Vector& b, double tol, int max_iter);

}  // namespace optlab::numkit
