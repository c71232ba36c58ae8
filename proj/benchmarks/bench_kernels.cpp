// Compares the OpenMP kernels against their serial reference
// implementations: wall time and bit-equality of the results.

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "optlab/numkit/matrix.hpp"
#include "optlab/numkit/rng.hpp"
#include "optlab/problems/fixtures.hpp"
#include "optlab/problems/logistic.hpp"

using namespace optlab;
using numkit::Matrix;
using numkit::Vector;

namespace {

double now_ms() {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

Matrix random_matrix(std::size_t rows, std::size_t cols, numkit::RngStream& rng) {
    Matrix A(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) A(i, j) = rng.normal(0.0, 1.0);
    return A;
}

bool bit_equal(const Matrix& A, const Matrix& B) {
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j)
            if (A(i, j) != B(i, j)) return false;
    return true;
}

template <typename F>
double time_best_of(int reps, F&& fn) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const double t0 = now_ms();
        fn();
        best = std::min(best, now_ms() - t0);
    }
    return best;
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (OpenMP disabled)\n");
#endif

    numkit::RngStream rng(7);
    {
        const Matrix A = random_matrix(400, 300, rng);
        const Matrix B = random_matrix(300, 400, rng);
        Matrix serial, parallel;
        const double ts = time_best_of(3, [&] { serial = numkit::matmul_serial(A, B); });
        const double tp = time_best_of(3, [&] { parallel = numkit::matmul(A, B); });
        std::printf("matmul 400x300x400:   serial %8.2f ms   parallel %8.2f ms   speedup %.2fx   %s\n",
                    ts, tp, ts / tp, bit_equal(serial, parallel) ? "bit-equal" : "MISMATCH");
    }
    {
        const Matrix J = random_matrix(256, 2000, rng);
        Matrix serial, parallel;
        const double ts = time_best_of(3, [&] { serial = numkit::gram_rows_serial(J, 1.0 / 256); });
        const double tp = time_best_of(3, [&] { parallel = numkit::gram_rows(J, 1.0 / 256); });
        std::printf("gram 256x2000:        serial %8.2f ms   parallel %8.2f ms   speedup %.2fx   %s\n",
                    ts, tp, ts / tp, bit_equal(serial, parallel) ? "bit-equal" : "MISMATCH");
    }
    {
        const auto data = problems::two_gaussians_dataset(6000, 4);
        const auto obj = problems::logistic_objective(data);
        Vector theta(obj->dim());
        theta[0] = 0.5;
        std::vector<std::size_t> all(obj->sample_count());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        Vector gs, gp;
        const double ts = time_best_of(5, [&] {
            gs = problems::mean_sample_gradient_serial(*obj, theta, all);
        });
        const double tp =
            time_best_of(5, [&] { gp = problems::mean_sample_gradient(*obj, theta, all); });
        double diff = 0.0;
        for (std::size_t i = 0; i < gs.size(); ++i) diff = std::max(diff, std::abs(gs[i] - gp[i]));
        std::printf("logistic batch gradient m=6000:  serial %7.2f ms  parallel %7.2f ms  speedup %.2fx  max diff %.2e\n",
                    ts, tp, ts / tp, diff);
    }
    {
        const auto fx = problems::spectral_bias_fixture(1);
        const auto obj = fx.objective();
        std::vector<std::size_t> all(obj->sample_count());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        Vector gs, gp;
        const double ts = time_best_of(5, [&] {
            gs = problems::mean_sample_gradient_serial(*obj, fx.theta0, all);
        });
        const double tp =
            time_best_of(5, [&] { gp = problems::mean_sample_gradient(*obj, fx.theta0, all); });
        double diff = 0.0;
        for (std::size_t i = 0; i < gs.size(); ++i) diff = std::max(diff, std::abs(gs[i] - gp[i]));
        std::printf("mlp batch gradient m=256 n=4417: serial %7.2f ms  parallel %7.2f ms  speedup %.2fx  max diff %.2e\n",
                    ts, tp, ts / tp, diff);
    }
    return 0;
}
