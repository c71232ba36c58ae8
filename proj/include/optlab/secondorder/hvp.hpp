#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "optlab/numkit/cg.hpp"
#include "optlab/numkit/matrix.hpp"
#include "optlab/problems/objective.hpp"

namespace optlab::secondorder {

using numkit::LinearOperator;
using numkit::Matrix;
using numkit::Vector;
using problems::FiniteSumObjective;

/// v ↦ (1/m)·Jᵀ(J·v) + β·v with J evaluated once at θ. Symmetric PSD for
/// β ≥ 0.
LinearOperator gauss_newton_hvp(const FiniteSumObjective& obj, const Vector& theta, double beta);

/// v ↦ (∇f(θ+εv) − ∇f(θ−εv)) / (2ε) with ε = 1e-6·(1+‖θ‖)/‖v‖.
LinearOperator finite_diff_hvp(std::function<Vector(const Vector&)> grad, Vector theta);

/// Finite-difference curvature of the subsample mean gradient over I_H.
LinearOperator subsampled_hvp(const FiniteSumObjective& obj, const Vector& theta,
                              std::vector<std::size_t> hessian_indices);

}  // namespace optlab::secondorder
