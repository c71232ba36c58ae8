#pragma once

#include <functional>

#include "optlab/numkit/vector.hpp"

namespace optlab::secondorder {

using numkit::Vector;
using ValueFn = std::function<double(const Vector&)>;
using GradFn = std::function<Vector(const Vector&)>;

struct LineSearchResult {
    double alpha = 0.0;
    int evals = 0;  // objective evaluations spent
    bool success = false;
};

/// Backtracking Armijo: shrink from alpha0 until
/// f(θ+αp) ≤ f(θ) + c1·α·pᵀ∇f(θ). Throws when p is not a descent
/// direction.
LineSearchResult line_search_armijo(const ValueFn& f, const Vector& theta, const Vector& p,
                                    double f0, double slope0, double c1 = 1e-4,
                                    double shrink = 0.5, double alpha0 = 1.0, int max_steps = 60);

/// Strong Wolfe bracketing/zoom: Armijo plus |pᵀ∇f(θ+αp)| ≤ c2·|pᵀ∇f(θ)|.
LineSearchResult line_search_wolfe(const ValueFn& f, const GradFn& grad, const Vector& theta,
                                   const Vector& p, double f0, double slope0, double c1 = 1e-4,
                                   double c2 = 0.9, double alpha0 = 1.0, int max_brackets = 25);

}  // namespace optlab::secondorder
