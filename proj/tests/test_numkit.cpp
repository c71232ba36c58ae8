#include "doctest.h"

#include <cmath>

#include "optlab/numkit/cg.hpp"
#include "optlab/numkit/eigen.hpp"
#include "optlab/numkit/matrix.hpp"
#include "optlab/numkit/rng.hpp"
#include "oracles.hpp"

using namespace optlab::numkit;

TEST_CASE("sym_eigen diagonal") {
    Matrix A(2, 2);
    A(0, 0) = 2.0;
    A(1, 1) = 1.0;
    const auto d = sym_eigen(A);
    CHECK(d.eigenvalues[0] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(d.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(d.eigenvectors(0, 0)) == doctest::Approx(1.0));
    CHECK(std::abs(d.eigenvectors(1, 1)) == doctest::Approx(1.0));
}

TEST_CASE("sym_eigen off-diagonal pair") {
    Matrix A(2, 2);
    A(0, 1) = 1.0;
    A(1, 0) = 1.0;
    const auto d = sym_eigen(A);
    CHECK(d.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(d.eigenvalues[1] == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("sym_eigen matches characteristic polynomial roots") {
    RngStream rng(42);
    const Matrix A = oracles::random_symmetric(5, rng);
    const auto d = sym_eigen(A);
    const auto roots = oracles::real_roots_monic(oracles::charpoly(A));
    REQUIRE(roots.size() == 5);
    for (std::size_t i = 0; i < 5; ++i)
        CHECK(d.eigenvalues[i] == doctest::Approx(roots[i]).epsilon(1e-8));
}

TEST_CASE("sym_eigen reconstruction and orthogonality up to 50x50") {
    RngStream rng(7);
    for (std::size_t n : {std::size_t{3}, std::size_t{10}, std::size_t{25}, std::size_t{50}}) {
        const Matrix A = oracles::random_symmetric(n, rng);
        const auto d = sym_eigen(A);
        Matrix lambda(n, n);
        for (std::size_t i = 0; i < n; ++i) lambda(i, i) = d.eigenvalues[i];
        const Matrix recon =
            matmul_serial(matmul_serial(d.eigenvectors, lambda), d.eigenvectors.transposed());
        CHECK(frobenius_norm(recon - A) <= 1e-9 * frobenius_norm(A));
        const Matrix qtq = matmul_serial(d.eigenvectors.transposed(), d.eigenvectors);
        CHECK(frobenius_norm(qtq - Matrix::identity(n)) <= 1e-10);
        for (std::size_t i = 0; i + 1 < n; ++i) CHECK(d.eigenvalues[i] >= d.eigenvalues[i + 1]);
    }
}

TEST_CASE("sym_eigen rejects bad input") {
    CHECK_THROWS(sym_eigen(Matrix(2, 3)));
    Matrix A(2, 2);
    A(0, 1) = 1.0;  // asymmetric
    CHECK_THROWS(sym_eigen(A));
}

TEST_CASE("condition_number") {
    EigenDecomposition d;
    d.eigenvalues = Vector{4.0, 1.0};
    CHECK(condition_number(d) == doctest::Approx(4.0));
    d.eigenvalues = Vector{3.3, 3.3};
    CHECK(condition_number(d) == doctest::Approx(1.0));
    d.eigenvalues = Vector{1.0, 0.0};
    CHECK_THROWS(condition_number(d));
}

TEST_CASE("cg identity converges immediately") {
    const Vector b{1.0, 2.0, 3.0};
    auto apply = [](const Vector& v) { return v; };
    const auto res = cg_solve(apply, b, 1e-12, 10);
    CHECK(res.flag == CgFlag::Converged);
    CHECK(res.iterations <= 1);
    for (std::size_t i = 0; i < 3; ++i) CHECK(res.x[i] == doctest::Approx(b[i]).epsilon(1e-12));
}

TEST_CASE("cg diagonal system") {
    const Vector b{1.0, 1.0, 1.0};
    auto apply = [](const Vector& v) { return Vector{1.0 * v[0], 2.0 * v[1], 3.0 * v[2]}; };
    const auto res = cg_solve(apply, b, 1e-14, 10);
    CHECK(res.x[0] == doctest::Approx(1.0));
    CHECK(res.x[1] == doctest::Approx(0.5));
    CHECK(res.x[2] == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("cg matches dense solve on random SPD") {
    RngStream rng(3);
    const Matrix A = oracles::random_spd(10, rng);
    Vector b(10);
    for (std::size_t i = 0; i < 10; ++i) b[i] = rng.normal(0.0, 1.0);
    const auto res = cg_solve([&](const Vector& v) { return matvec(A, v); }, b, 1e-12, 100);
    const Vector ref = oracles::gauss_solve(A, b);
    CHECK(res.flag == CgFlag::Converged);
    for (std::size_t i = 0; i < 10; ++i) CHECK(res.x[i] == doctest::Approx(ref[i]).epsilon(1e-9));
}

TEST_CASE("cg converges within n iterations on well-conditioned SPD") {
    RngStream rng(5);
    for (std::size_t n : {std::size_t{4}, std::size_t{8}, std::size_t{16}}) {
        const Matrix A = oracles::random_spd(n, rng, 1.0);
        Vector b(n);
        for (std::size_t i = 0; i < n; ++i) b[i] = rng.normal(0.0, 1.0);
        const auto res = cg_solve([&](const Vector& v) { return matvec(A, v); }, b, 1e-10,
                                  static_cast<int>(n) + 2);
        CHECK(res.flag == CgFlag::Converged);
        Vector r = matvec(A, res.x);
        r -= b;
        CHECK(norm2(r) <= 1e-10 * norm2(b) * 1.001);
    }
}

TEST_CASE("cg negative curvature truncation") {
    const Vector b{1.0, 1.0};
    auto apply = [](const Vector& v) { return Vector{-v[0], -v[1]}; };
    const auto res = cg_solve(apply, b, 1e-10, 10);
    CHECK(res.flag == CgFlag::NegativeCurvature);
    // first-iteration hit returns b itself
    CHECK(res.x[0] == doctest::Approx(1.0));
    CHECK(res.x[1] == doctest::Approx(1.0));
}

TEST_CASE("cholesky solve matches gaussian elimination") {
    RngStream rng(9);
    const Matrix A = oracles::random_spd(12, rng);
    Vector b(12);
    for (std::size_t i = 0; i < 12; ++i) b[i] = rng.normal(0.0, 1.0);
    Matrix L = A;
    cholesky_factor(L);
    const Vector x = cholesky_solve(L, b);
    const Vector ref = oracles::gauss_solve(A, b);
    for (std::size_t i = 0; i < 12; ++i) CHECK(x[i] == doctest::Approx(ref[i]).epsilon(1e-10));
}

TEST_CASE("rng determinism and replay") {
    RngStream a(123), b(123);
    for (int i = 0; i < 1000; ++i) REQUIRE(a.next_u64() == b.next_u64());
    RngStream c(123);
    c.next_u64();
    RngStream d(123, 1);
    CHECK(c.next_u64() == d.next_u64());
}

TEST_CASE("rng choice degenerate and frequencies") {
    RngStream rng(1);
    const Vector degenerate{1.0, 0.0, 0.0};
    for (int i = 0; i < 100; ++i) REQUIRE(rng.choice(degenerate) == 0);

    const Vector even{1.0, 1.0};
    int zero_count = 0;
    for (int i = 0; i < 100000; ++i)
        if (rng.choice(even) == 0) ++zero_count;
    const double freq = zero_count / 1e5;
    CHECK(freq >= 0.49);
    CHECK(freq <= 0.51);

    CHECK_THROWS(rng.choice(Vector{0.0, 0.0}));
}

TEST_CASE("rng uniform bounds and normal moments") {
    RngStream rng(77);
    double mean = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform(-2.0, 3.0);
        REQUIRE(u >= -2.0);
        REQUIRE(u < 3.0);
        mean += u;
    }
    CHECK(mean / n == doctest::Approx(0.5).epsilon(0.1));

    double nmean = 0.0, nvar = 0.0;
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i) {
        xs[i] = rng.normal(1.0, 2.0);
        nmean += xs[i];
    }
    nmean /= n;
    for (int i = 0; i < n; ++i) nvar += (xs[i] - nmean) * (xs[i] - nmean);
    CHECK(nmean == doctest::Approx(1.0).epsilon(0.05));
    CHECK(nvar / n == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("distinct seeds decorrelated") {
    RngStream a(1), b(2);
    const int n = 10000;
    double sa = 0, sb = 0, saa = 0, sbb = 0, sab = 0;
    for (int i = 0; i < n; ++i) {
        const double x = a.next_unit(), y = b.next_unit();
        sa += x;
        sb += y;
        saa += x * x;
        sbb += y * y;
        sab += x * y;
    }
    const double cov = sab / n - (sa / n) * (sb / n);
    const double rho =
        cov / std::sqrt((saa / n - sa / n * (sa / n)) * (sbb / n - sb / n * (sb / n)));
    CHECK(std::abs(rho) < 0.05);
}

TEST_CASE("parallel kernels bit-equal to serial") {
    RngStream rng(4);
    Matrix A(37, 23), B(23, 41);
    for (std::size_t i = 0; i < 37; ++i)
        for (std::size_t j = 0; j < 23; ++j) A(i, j) = rng.normal(0.0, 1.0);
    for (std::size_t i = 0; i < 23; ++i)
        for (std::size_t j = 0; j < 41; ++j) B(i, j) = rng.normal(0.0, 1.0);
    const Matrix C1 = matmul(A, B);
    const Matrix C2 = matmul_serial(A, B);
    for (std::size_t i = 0; i < C1.rows(); ++i)
        for (std::size_t j = 0; j < C1.cols(); ++j) REQUIRE(C1(i, j) == C2(i, j));

    const Matrix G1 = gram_rows(A, 0.25);
    const Matrix G2 = gram_rows_serial(A, 0.25);
    for (std::size_t i = 0; i < G1.rows(); ++i)
        for (std::size_t j = 0; j < G1.cols(); ++j) REQUIRE(G1(i, j) == G2(i, j));
}

TEST_CASE("gram_cols matches explicit transpose product") {
    RngStream rng(6);
    Matrix A(9, 5);
    for (std::size_t i = 0; i < 9; ++i)
        for (std::size_t j = 0; j < 5; ++j) A(i, j) = rng.normal(0.0, 1.0);
    const Matrix G = gram_cols(A, 1.0 / 9.0);
    const Matrix ref = matmul_serial(A.transposed(), A);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j)
            CHECK(G(i, j) == doctest::Approx(ref(i, j) / 9.0).epsilon(1e-13));
}
