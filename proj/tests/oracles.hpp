// Test-only reference implementations, independent of the library paths
// they are used to check.
#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "optlab/numkit/matrix.hpp"
#include "optlab/numkit/rng.hpp"
#include "optlab/numkit/vector.hpp"

namespace oracles {

using optlab::numkit::Matrix;
using optlab::numkit::Vector;

/// Characteristic polynomial coefficients by the Faddeev-LeVerrier
/// recursion: p(λ) = λⁿ + c[0]·λⁿ⁻¹ + ... + c[n-1].
inline std::vector<double> charpoly(const Matrix& A) {
    const std::size_t n = A.rows();
    std::vector<double> c(n);
    Matrix M = Matrix::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        const Matrix AM = optlab::numkit::matmul_serial(A, M);
        double tr = 0.0;
        for (std::size_t i = 0; i < n; ++i) tr += AM(i, i);
        c[k - 1] = -tr / static_cast<double>(k);
        M = AM;
        for (std::size_t i = 0; i < n; ++i) M(i, i) += c[k - 1];
    }
    return c;
}

inline double eval_monic(const std::vector<double>& c, double x) {
    double v = 1.0;
    for (double coeff : c) v = v * x + coeff;
    return v;
}

/// All real roots of a monic polynomial whose roots are known to be real
/// (characteristic polynomial of a symmetric matrix): roots of p' bracket
/// the roots of p, so recurse down to the linear case and bisect.
inline std::vector<double> real_roots_monic(const std::vector<double>& c) {
    const std::size_t n = c.size();
    if (n == 0) return {};
    if (n == 1) return {-c[0]};

    // monic derivative: p'(x)/n
    std::vector<double> dc(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i)
        dc[i] = c[i] * static_cast<double>(n - 1 - i) / static_cast<double>(n);
    const std::vector<double> crit = real_roots_monic(dc);

    // global root bound (Cauchy)
    double bound = 1.0;
    for (double coeff : c) bound = std::max(bound, std::abs(coeff));
    bound = 1.0 + bound;

    std::vector<double> edges{-bound};
    edges.insert(edges.end(), crit.begin(), crit.end());
    edges.push_back(bound);
    std::sort(edges.begin(), edges.end());

    std::vector<double> roots;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        double lo = edges[i], hi = edges[i + 1];
        double flo = eval_monic(c, lo), fhi = eval_monic(c, hi);
        if (flo == 0.0) {
            roots.push_back(lo);
            continue;
        }
        if (flo * fhi > 0.0) continue;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double fm = eval_monic(c, mid);
            if (fm == 0.0) {
                lo = hi = mid;
                break;
            }
            if (flo * fm < 0.0) {
                hi = mid;
            } else {
                lo = mid;
                flo = fm;
            }
        }
        roots.push_back(0.5 * (lo + hi));
    }
    std::sort(roots.begin(), roots.end(), std::greater<>());
    return roots;
}

/// Dense solve by Gaussian elimination with partial pivoting.
inline Vector gauss_solve(Matrix A, Vector b) {
    const std::size_t n = A.rows();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(A(r, col)) > std::abs(A(pivot, col))) pivot = r;
        if (A(pivot, col) == 0.0) throw std::runtime_error("gauss_solve: singular");
        if (pivot != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(A(col, j), A(pivot, j));
            std::swap(b[col], b[pivot]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = A(r, col) / A(col, col);
            for (std::size_t j = col; j < n; ++j) A(r, j) -= f * A(col, j);
            b[r] -= f * b[col];
        }
    }
    Vector x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= A(i, j) * x[j];
        x[i] = s / A(i, i);
    }
    return x;
}

/// Dense BFGS inverse update:
/// B⁺ = (I − ρ·s·yᵀ)·B·(I − ρ·y·sᵀ) + ρ·s·sᵀ.
inline Matrix bfgs_inverse_update(const Matrix& B, const Vector& s, const Vector& y) {
    const std::size_t n = s.size();
    const double rho = 1.0 / optlab::numkit::dot(y, s);
    Matrix left = Matrix::identity(n);
    Matrix right = Matrix::identity(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            left(i, j) -= rho * s[i] * y[j];
            right(i, j) -= rho * y[i] * s[j];
        }
    Matrix out = optlab::numkit::matmul_serial(optlab::numkit::matmul_serial(left, B), right);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) += rho * s[i] * s[j];
    return out;
}

inline Matrix random_spd(std::size_t n, optlab::numkit::RngStream& rng, double shift = 0.5) {
    Matrix B(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) B(i, j) = rng.normal(0.0, 1.0);
    Matrix A = optlab::numkit::gram_rows_serial(B, 1.0 / static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i) A(i, i) += shift;
    return A;
}

inline Matrix random_symmetric(std::size_t n, optlab::numkit::RngStream& rng) {
    Matrix A(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            A(i, j) = rng.normal(0.0, 1.0);
            A(j, i) = A(i, j);
        }
    return A;
}

}  // namespace oracles
