#include "optlab/numkit/matrix.hpp"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace optlab::numkit {

Vector matvec(const Matrix& A, const Vector& x) {
    if (x.size() != A.cols()) throw std::invalid_argument("matvec: size mismatch");
    Vector y(A.rows());
    for (std::size_t i = 0; i < A.rows(); ++i) {
        const double* row = A.row_ptr(i);
        double s = 0.0;
        for (std::size_t j = 0; j < A.cols(); ++j) s += row[j] * x[j];
        y[i] = s;
    }
    return y;
}

Vector matvec_transposed(const Matrix& A, const Vector& x) {
    if (x.size() != A.rows()) throw std::invalid_argument("matvec_transposed: size mismatch");
    Vector y(A.cols());
    for (std::size_t i = 0; i < A.rows(); ++i) {
        const double* row = A.row_ptr(i);
        const double xi = x[i];
        for (std::size_t j = 0; j < A.cols(); ++j) y[j] += xi * row[j];
    }
    return y;
}

double frobenius_norm(const Matrix& A) {
    double s = 0.0;
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) s += A(i, j) * A(i, j);
    return std::sqrt(s);
}

double max_abs(const Matrix& A) {
    double m = 0.0;
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) m = std::max(m, std::abs(A(i, j)));
    return m;
}

bool is_symmetric(const Matrix& A, double rel_tol) {
    if (A.rows() != A.cols()) return false;
    const double scale = max_abs(A);
    const double tol = rel_tol * (scale > 0.0 ? scale : 1.0);
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = i + 1; j < A.cols(); ++j)
            if (std::abs(A(i, j) - A(j, i)) > tol) return false;
    return true;
}

Matrix matmul_serial(const Matrix& A, const Matrix& B) {
    if (A.cols() != B.rows()) throw std::invalid_argument("matmul: shape mismatch");
    Matrix C(A.rows(), B.cols());
    for (std::size_t i = 0; i < A.rows(); ++i) {
        const double* a = A.row_ptr(i);
        double* c = C.row_ptr(i);
        for (std::size_t k = 0; k < A.cols(); ++k) {
            const double aik = a[k];
            const double* b = B.row_ptr(k);
            for (std::size_t j = 0; j < B.cols(); ++j) c[j] += aik * b[j];
        }
    }
    return C;
}

Matrix matmul(const Matrix& A, const Matrix& B) {
    if (A.cols() != B.rows()) throw std::invalid_argument("matmul: shape mismatch");
    Matrix C(A.rows(), B.cols());
    const std::ptrdiff_t nrows = static_cast<std::ptrdiff_t>(A.rows());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < nrows; ++i) {
        const double* a = A.row_ptr(static_cast<std::size_t>(i));
        double* c = C.row_ptr(static_cast<std::size_t>(i));
        for (std::size_t k = 0; k < A.cols(); ++k) {
            const double aik = a[k];
            const double* b = B.row_ptr(k);
            for (std::size_t j = 0; j < B.cols(); ++j) c[j] += aik * b[j];
        }
    }
    return C;
}

Matrix gram_rows_serial(const Matrix& A, double scale) {
    Matrix G(A.rows(), A.rows());
    for (std::size_t i = 0; i < A.rows(); ++i) {
        const double* ri = A.row_ptr(i);
        for (std::size_t j = i; j < A.rows(); ++j) {
            const double* rj = A.row_ptr(j);
            double s = 0.0;
            for (std::size_t k = 0; k < A.cols(); ++k) s += ri[k] * rj[k];
            G(i, j) = scale * s;
            G(j, i) = G(i, j);
        }
    }
    return G;
}

Matrix gram_rows(const Matrix& A, double scale) {
    Matrix G(A.rows(), A.rows());
    const std::ptrdiff_t nrows = static_cast<std::ptrdiff_t>(A.rows());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < nrows; ++i) {
        const double* ri = A.row_ptr(static_cast<std::size_t>(i));
        for (std::size_t j = static_cast<std::size_t>(i); j < A.rows(); ++j) {
            const double* rj = A.row_ptr(j);
            double s = 0.0;
            for (std::size_t k = 0; k < A.cols(); ++k) s += ri[k] * rj[k];
            G(static_cast<std::size_t>(i), j) = scale * s;
            G(j, static_cast<std::size_t>(i)) = G(static_cast<std::size_t>(i), j);
        }
    }
    return G;
}

Matrix gram_cols(const Matrix& A, double scale) {
    Matrix G(A.cols(), A.cols());
    // Accumulate rank-one contributions row by row; cache-friendly for row-major A.
    for (std::size_t r = 0; r < A.rows(); ++r) {
        const double* a = A.row_ptr(r);
        for (std::size_t i = 0; i < A.cols(); ++i) {
            const double ai = a[i];
            if (ai == 0.0) continue;
            double* gi = G.row_ptr(i);
            for (std::size_t j = 0; j < A.cols(); ++j) gi[j] += ai * a[j];
        }
    }
    G *= scale;
    return G;
}

void cholesky_factor(Matrix& A) {
    if (A.rows() != A.cols()) throw std::invalid_argument("cholesky: not square");
    const std::size_t n = A.rows();
    for (std::size_t j = 0; j < n; ++j) {
        double d = A(j, j);
        for (std::size_t k = 0; k < j; ++k) d -= A(j, k) * A(j, k);
        if (d <= 0.0) throw std::runtime_error("cholesky: matrix not positive definite");
        const double ljj = std::sqrt(d);
        A(j, j) = ljj;
        const std::ptrdiff_t start = static_cast<std::ptrdiff_t>(j) + 1;
        const std::ptrdiff_t nn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = start; i < nn; ++i) {
            double s = A(static_cast<std::size_t>(i), j);
            for (std::size_t k = 0; k < j; ++k) s -= A(static_cast<std::size_t>(i), k) * A(j, k);
            A(static_cast<std::size_t>(i), j) = s / ljj;
        }
    }
    // zero the strict upper triangle so the factor is usable as-is
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) A(i, j) = 0.0;
}

Vector cholesky_solve(const Matrix& L, const Vector& b) {
    const std::size_t n = L.rows();
    if (b.size() != n) throw std::invalid_argument("cholesky_solve: size mismatch");
    Vector y(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = b[i];
        for (std::size_t k = 0; k < i; ++k) s -= L(i, k) * y[k];
        y[i] = s / L(i, i);
    }
    Vector x(n);
    for (std::size_t ii = n; ii-- > 0;) {
        double s = y[ii];
        for (std::size_t k = ii + 1; k < n; ++k) s -= L(k, ii) * x[k];
        x[ii] = s / L(ii, ii);
    }
    return x;
}

}  // namespace optlab::numkit
