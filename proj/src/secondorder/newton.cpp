#include "optlab/secondorder/newton.hpp"

#include <cmath>
#include <stdexcept>

#include "optlab/secondorder/line_search.hpp"

namespace optlab::secondorder {

double default_forcing(double grad_norm) { return std::min(0.5, std::sqrt(grad_norm)); }

namespace {

NewtonStepResult take_step(const FiniteSumObjective& obj, const Vector& theta, const Vector& g,
                           numkit::CgResult cg, const NewtonOptions& opts) {
    NewtonStepResult out;
    out.cg_iters = cg.iterations;
    out.cg_truncated = cg.flag != numkit::CgFlag::Converged;

    Vector p = std::move(cg.x);
    double slope = numkit::dot(p, g);
    if (slope >= 0.0) {
        // not a descent direction; fall back to steepest descent
        p = g;
        p *= -1.0;
        slope = -numkit::dot(g, g);
        out.gradient_fallback = true;
    }

    const double f0 = obj.value(theta);
    auto f = [&obj](const Vector& t) { return obj.value(t); };
    const LineSearchResult ls =
        line_search_armijo(f, theta, p, f0, slope, opts.c1, opts.shrink, 1.0, opts.max_ls_steps);
    out.ls_evals = ls.evals;
    out.alpha = ls.alpha;
    out.theta_next = theta;
    numkit::axpy(ls.alpha, p, out.theta_next);
    out.f_next = obj.value(out.theta_next);
    return out;
}

}  // namespace

NewtonStepResult newton_cg_step(const FiniteSumObjective& obj, const Vector& theta,
                                const LinearOperator& hvp, double forcing_eta,
                                const NewtonOptions& opts) {
    if (forcing_eta <= 0.0 || forcing_eta >= 1.0)
        throw std::invalid_argument("newton_cg_step: forcing must lie in (0,1)");
    Vector g = obj.gradient(theta);
    Vector rhs = g;
    rhs *= -1.0;
    numkit::CgResult cg = numkit::cg_solve(hvp, rhs, forcing_eta, opts.cg_max_iter);
    return take_step(obj, theta, g, std::move(cg), opts);
}

NewtonStepResult gauss_newton_step(const FiniteSumObjective& obj, const Vector& theta, double beta,
                                   double forcing_eta, const NewtonOptions& opts) {
    if (beta < 0.0) throw std::invalid_argument("gauss_newton_step: beta must be >= 0");
    Vector g = obj.gradient(theta);
    Vector rhs = g;
    rhs *= -1.0;
    const LinearOperator apply = gauss_newton_hvp(obj, theta, beta);
    numkit::CgResult cg = numkit::cg_solve(apply, rhs, std::max(forcing_eta, 1e-12), opts.cg_max_iter);
    return take_step(obj, theta, g, std::move(cg), opts);
}

NewtonStepResult subsampled_newton_step(const FiniteSumObjective& obj, const Vector& theta,
                                        const std::vector<std::size_t>& hessian_indices,
                                        const std::vector<std::size_t>& gradient_indices,
                                        double forcing_eta, const NewtonOptions& opts) {
    if (hessian_indices.empty() || gradient_indices.empty())
        throw std::invalid_argument("subsampled_newton_step: empty index set");
    Vector g = problems::mean_sample_gradient(obj, theta, gradient_indices);
    Vector rhs = g;
    rhs *= -1.0;
    const LinearOperator apply = subsampled_hvp(obj, theta, hessian_indices);
    numkit::CgResult cg = numkit::cg_solve(apply, rhs, forcing_eta, opts.cg_max_iter);

    // line search on the subsample gradient's slope but the full objective
    NewtonStepResult out;
    out.cg_iters = cg.iterations;
    out.cg_truncated = cg.flag != numkit::CgFlag::Converged;
    Vector p = std::move(cg.x);
    Vector full_g = obj.gradient(theta);
    double slope = numkit::dot(p, full_g);
    if (slope >= 0.0) {
        p = full_g;
        p *= -1.0;
        slope = -numkit::dot(full_g, full_g);
        out.gradient_fallback = true;
    }
    const double f0 = obj.value(theta);
    auto f = [&obj](const Vector& t) { return obj.value(t); };
    const LineSearchResult ls =
        line_search_armijo(f, theta, p, f0, slope, opts.c1, opts.shrink, 1.0, opts.max_ls_steps);
    out.ls_evals = ls.evals;
    out.alpha = ls.alpha;
    out.theta_next = theta;
    numkit::axpy(ls.alpha, p, out.theta_next);
    out.f_next = obj.value(out.theta_next);
    return out;
}

}  // namespace optlab::secondorder
