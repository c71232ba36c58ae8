#include "optlab/numkit/cg.hpp"

#include <stdexcept>

namespace optlab::numkit {

CgResult cg_solve(const LinearOperator& apply_A, const Vector& b, double tol, int max_iter) {
    if (tol <= 0.0) throw std::invalid_argument("cg_solve: tol must be positive");

    CgResult out;
    out.x = Vector(b.size());
    Vector r = b;  // residual b - A*0
    Vector p = r;
    double rr = dot(r, r);
    const double b_norm = norm2(b);
    if (b_norm == 0.0) return out;
    const double stop = tol * b_norm;

    for (int k = 0; k < max_iter; ++k) {
        if (std::sqrt(rr) <= stop) {
            out.flag = CgFlag::Converged;
            return out;
        }
        Vector Ap = apply_A(p);
        const double pAp = dot(p, Ap);
        if (pAp <= 0.0) {
            if (k == 0) out.x = b;
            out.flag = CgFlag::NegativeCurvature;
            return out;
        }
        const double alpha = rr / pAp;
        axpy(alpha, p, out.x);
        axpy(-alpha, Ap, r);
        const double rr_new = dot(r, r);
        const double beta = rr_new / rr;
        rr = rr_new;
        for (std::size_t i = 0; i < p.size(); ++i) p[i] = r[i] + beta * p[i];
        out.iterations = k + 1;
    }
    out.flag = std::sqrt(rr) <= stop ? CgFlag::Converged : CgFlag::MaxIterations;
    return out;
}

}  // namespace optlab::numkit
