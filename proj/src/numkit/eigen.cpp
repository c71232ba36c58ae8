#include "optlab/numkit/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace optlab::numkit {

namespace {

double max_off_diagonal(const Matrix& A) {
    double m = 0.0;
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = i + 1; j < A.cols(); ++j) m = std::max(m, std::abs(A(i, j)));
    return m;
}

}  // namespace

EigenDecomposition sym_eigen(const Matrix& A_in) {
    if (A_in.rows() != A_in.cols()) throw std::invalid_argument("sym_eigen: matrix not square");
    if (!is_symmetric(A_in)) throw std::invalid_argument("sym_eigen: matrix not symmetric");

    const std::size_t n = A_in.rows();
    Matrix A = A_in;
    Matrix Q = Matrix::identity(n);

    const double fro = frobenius_norm(A);
    const double tol = 1e-12 * (fro > 0.0 ? fro : 1.0);
    const int max_sweeps = 100;

    for (int sweep = 0; sweep < max_sweeps && max_off_diagonal(A) > tol; ++sweep) {
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = A(p, q);
                if (std::abs(apq) <= 1e-300) continue;
                const double theta = (A(q, q) - A(p, p)) / (2.0 * apq);
                const double t =
                    (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);

                const double app = A(p, p);
                const double aqq = A(q, q);
                A(p, p) = app - t * apq;
                A(q, q) = aqq + t * apq;
                A(p, q) = 0.0;
                A(q, p) = 0.0;
                for (std::size_t r = 0; r < n; ++r) {
                    if (r != p && r != q) {
                        const double arp = A(r, p);
                        const double arq = A(r, q);
                        A(r, p) = arp - s * (arq + tau * arp);
                        A(p, r) = A(r, p);
                        A(r, q) = arq + s * (arp - tau * arq);
                        A(q, r) = A(r, q);
                    }
                    const double qrp = Q(r, p);
                    const double qrq = Q(r, q);
                    Q(r, p) = qrp - s * (qrq + tau * qrp);
                    Q(r, q) = qrq + s * (qrp - tau * qrq);
                }
            }
        }
    }

    // Sort descending, permuting eigenvector columns alongside.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return A(a, a) > A(b, b); });

    EigenDecomposition out;
    out.eigenvalues = Vector(n);
    out.eigenvectors = Matrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = A(order[k], order[k]);
        for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, k) = Q(r, order[k]);
    }
    return out;
}

double condition_number(const EigenDecomposition& d) {
    if (d.eigenvalues.empty()) throw std::invalid_argument("condition_number: empty spectrum");
    const double lmax = d.eigenvalues[0];
    const double lmin = d.eigenvalues[d.eigenvalues.size() - 1];
    if (lmin <= 1e-14 * lmax)
        throw std::runtime_error("condition_number: numerically singular spectrum");
    return lmax / lmin;
}

FlooredCondition condition_number_floored(const EigenDecomposition& d, double floor_rel) {
    FlooredCondition out;
    if (d.eigenvalues.empty()) throw std::invalid_argument("condition_number: empty spectrum");
    out.lambda_max = d.eigenvalues[0];
    const double floor = floor_rel * std::abs(out.lambda_max);
    double lmin = out.lambda_max;
    for (std::size_t i = 0; i < d.eigenvalues.size(); ++i) {
        if (d.eigenvalues[i] > floor)
            lmin = d.eigenvalues[i];
        else
            ++out.floored_modes;
    }
    out.lambda_min_kept = lmin;
    out.kappa = (lmin > 0.0) ? out.lambda_max / lmin : std::numeric_limits<double>::infinity();
    return out;
}

}  // namespace optlab::numkit
