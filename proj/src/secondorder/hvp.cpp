#include "optlab/secondorder/hvp.hpp"

#include <cmath>
#include <stdexcept>

namespace optlab::secondorder {

LinearOperator gauss_newton_hvp(const FiniteSumObjective& obj, const Vector& theta, double beta) {
    if (!obj.has_jacobian()) throw std::invalid_argument("gauss_newton_hvp: Jacobian required");
    auto J = std::make_shared<Matrix>(obj.jacobian(theta));
    const double inv_m = 1.0 / static_cast<double>(obj.sample_count());
    return [J, inv_m, beta](const Vector& v) {
        Vector Jv = numkit::matvec(*J, v);
        Vector out = numkit::matvec_transposed(*J, Jv);
        out *= inv_m;
        numkit::axpy(beta, v, out);
        return out;
    };
}

LinearOperator finite_diff_hvp(std::function<Vector(const Vector&)> grad, Vector theta) {
    const double tnorm = numkit::norm2(theta);
    return [grad = std::move(grad), theta = std::move(theta), tnorm](const Vector& v) {
        const double vnorm = numkit::norm2(v);
        if (vnorm == 0.0) return Vector(v.size());
        const double eps = 1e-6 * (1.0 + tnorm) / vnorm;
        Vector tp = theta, tm = theta;
        numkit::axpy(eps, v, tp);
        numkit::axpy(-eps, v, tm);
        Vector out = grad(tp);
        out -= grad(tm);
        out *= 1.0 / (2.0 * eps);
        return out;
    };
}

LinearOperator subsampled_hvp(const FiniteSumObjective& obj, const Vector& theta,
                              std::vector<std::size_t> hessian_indices) {
    if (hessian_indices.empty()) throw std::invalid_argument("subsampled_hvp: empty index set");
    auto grad = [&obj, idx = std::move(hessian_indices)](const Vector& t) {
        return problems::mean_sample_gradient(obj, t, idx);
    };
    return finite_diff_hvp(std::move(grad), theta);
}

}  // namespace optlab::secondorder
