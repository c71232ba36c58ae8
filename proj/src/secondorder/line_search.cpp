#include "optlab/secondorder/line_search.hpp"

#include <cmath>
#include <stdexcept>

namespace optlab::secondorder {

namespace {

Vector advance(const Vector& theta, double alpha, const Vector& p) {
    Vector t = theta;
    numkit::axpy(alpha, p, t);
    return t;
}

}  // namespace

LineSearchResult line_search_armijo(const ValueFn& f, const Vector& theta, const Vector& p,
                                    double f0, double slope0, double c1, double shrink,
                                    double alpha0, int max_steps) {
    if (slope0 >= 0.0) throw std::invalid_argument("line_search_armijo: not a descent direction");
    LineSearchResult res;
    double alpha = alpha0;
    for (int i = 0; i < max_steps; ++i) {
        const double fa = f(advance(theta, alpha, p));
        ++res.evals;
        if (std::isfinite(fa) && fa <= f0 + c1 * alpha * slope0) {
            res.alpha = alpha;
            res.success = true;
            return res;
        }
        alpha *= shrink;
    }
    res.alpha = alpha;
    return res;
}

LineSearchResult line_search_wolfe(const ValueFn& f, const GradFn& grad, const Vector& theta,
                                   const Vector& p, double f0, double slope0, double c1, double c2,
                                   double alpha0, int max_brackets) {
    if (slope0 >= 0.0) throw std::invalid_argument("line_search_wolfe: not a descent direction");
    LineSearchResult res;

    auto phi = [&](double a) {
        ++res.evals;
        return f(advance(theta, a, p));
    };
    auto dphi = [&](double a) { return numkit::dot(grad(advance(theta, a, p)), p); };

    // zoom on a bracket [lo, hi] known to contain a strong Wolfe point
    auto zoom = [&](double a_lo, double a_hi, double f_lo) -> LineSearchResult {
        for (int i = 0; i < max_brackets; ++i) {
            const double a = 0.5 * (a_lo + a_hi);
            const double fa = phi(a);
            if (!std::isfinite(fa) || fa > f0 + c1 * a * slope0 || fa >= f_lo) {
                a_hi = a;
                continue;
            }
            const double da = dphi(a);
            if (std::abs(da) <= -c2 * slope0) {
                res.alpha = a;
                res.success = true;
                return res;
            }
            if (da * (a_hi - a_lo) >= 0.0) a_hi = a_lo;
            a_lo = a;
            f_lo = fa;
        }
        res.alpha = a_lo;
        res.success = false;
        return res;
    };

    double a_prev = 0.0;
    double f_prev = f0;
    double a = alpha0;
    const double a_max = 64.0 * alpha0;
    for (int i = 0; i < max_brackets; ++i) {
        const double fa = phi(a);
        if (!std::isfinite(fa) || fa > f0 + c1 * a * slope0 || (i > 0 && fa >= f_prev))
            return zoom(a_prev, a, f_prev);
        const double da = dphi(a);
        if (std::abs(da) <= -c2 * slope0) {
            res.alpha = a;
            res.success = true;
            return res;
        }
        if (da >= 0.0) return zoom(a, a_prev, fa);
        a_prev = a;
        f_prev = fa;
        a = std::min(2.0 * a, a_max);
        if (a >= a_max) break;
    }
    res.alpha = a_prev;
    res.success = false;
    return res;
}

}  // namespace optlab::secondorder
