#pragma once

#include <vector>

#include "optlab/numkit/cg.hpp"
#include "optlab/problems/objective.hpp"
#include "optlab/secondorder/hvp.hpp"

namespace optlab::secondorder {

struct NewtonStepResult {
    Vector theta_next;
    double f_next = 0.0;
    int cg_iters = 0;
    int ls_evals = 0;
    double alpha = 0.0;
    bool cg_truncated = false;     // CG hit max-iter or negative curvature
    bool gradient_fallback = false;  // direction failed the descent test
};

struct NewtonOptions {
    double c1 = 1e-4;
    double shrink = 0.5;
    int max_ls_steps = 60;
    int cg_max_iter = 250;
};

/// Inexact Newton: CG-solve H p = −∇f(θ) to relative residual η, then an
/// Armijo backtracking step. Nonpositive curvature truncates the CG per
/// numkit::cg_solve; a non-descent direction falls back to −∇f.
NewtonStepResult newton_cg_step(const FiniteSumObjective& obj, const Vector& theta,
                                const LinearOperator& hvp, double forcing_eta,
                                const NewtonOptions& opts = {});

/// Damped Gauss-Newton: (JᵀJ/m + βI)·p = −∇f via CG, Armijo step.
NewtonStepResult gauss_newton_step(const FiniteSumObjective& obj, const Vector& theta, double beta,
                                   double forcing_eta = 1e-10, const NewtonOptions& opts = {});

/// Subsampled Hessian-free inexact Newton: Hessian estimate restricted to
/// I_H, gradient estimate to I_g.
NewtonStepResult subsampled_newton_step(const FiniteSumObjective& obj, const Vector& theta,
                                        const std::vector<std::size_t>& hessian_indices,
                                        const std::vector<std::size_t>& gradient_indices,
                                        double forcing_eta, const NewtonOptions& opts = {});

/// Eisenstat-Walker style forcing: min(0.5, sqrt(‖∇f‖)).
double default_forcing(double grad_norm);

}  // namespace optlab::secondorder
