#pragma once

#include <cstddef>
#include <stdexcept>

#include "optlab/numkit/vector.hpp"

namespace optlab::numkit {

/// Dense row-major matrix of 64-bit reals.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix I(n, n);
        for (std::size_t i = 0; i < n; ++i) I(i, i) = 1.0;
        return I;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    double* row_ptr(std::size_t i) { return data_.data() + i * cols_; }
    const double* row_ptr(std::size_t i) const { return data_.data() + i * cols_; }

    Vector row(std::size_t i) const {
        Vector r(cols_);
        for (std::size_t j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
        return r;
    }
    Vector col(std::size_t j) const {
        Vector c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }
    void set_row(std::size_t i, const Vector& r) {
        if (r.size() != cols_) throw std::invalid_argument("set_row: size mismatch");
        for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = r[j];
    }

    Matrix transposed() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix& operator+=(const Matrix& rhs) {
        check_same_shape(rhs);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
        return *this;
    }
    Matrix& operator-=(const Matrix& rhs) {
        check_same_shape(rhs);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
        return *this;
    }
    Matrix& operator*=(double s) {
        for (double& v : data_) v *= s;
        return *this;
    }
    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(double s, Matrix a) { return a *= s; }

private:
    void check_same_shape(const Matrix& rhs) const {
        if (rhs.rows_ != rows_ || rhs.cols_ != cols_)
            throw std::invalid_argument("Matrix: shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Vector matvec(const Matrix& A, const Vector& x);
/// Aᵀx without forming the transpose.
Vector matvec_transposed(const Matrix& A, const Vector& x);

double frobenius_norm(const Matrix& A);
double max_abs(const Matrix& A);

/// max |A_ij - A_ji| relative symmetric defect check.
bool is_symmetric(const Matrix& A, double rel_tol = 1e-12);

// Parallel kernels (OpenMP over output rows when enabled). The *_serial
// variants are the reference implementations; both orders of summation are
// identical per output entry, so results are bit-equal.
Matrix matmul(const Matrix& A, const Matrix& B);
Matrix matmul_serial(const Matrix& A, const Matrix& B);

/// scale * A·Aᵀ (symmetric by construction).
Matrix gram_rows(const Matrix& A, double scale);
Matrix gram_rows_serial(const Matrix& A, double scale);

/// scale * Aᵀ·A.
Matrix gram_cols(const Matrix& A, double scale);

/// In-place SPD Cholesky factorization, lower-triangular result in-place.
/// Throws on non-positive pivot.
void cholesky_factor(Matrix& A);
/// Solve A x = b given the factor from cholesky_factor.
Vector cholesky_solve(const Matrix& L, const Vector& b);

}  // namespace optlab::numkit
