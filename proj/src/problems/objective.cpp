#include "optlab/problems/objective.hpp"

#include <numeric>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace optlab::problems {

double FiniteSumObjective::value(const Vector& theta) const {
    std::vector<std::size_t> all(sample_count());
    std::iota(all.begin(), all.end(), std::size_t{0});
    return mean_sample_value(*this, theta, all);
}

Vector FiniteSumObjective::gradient(const Vector& theta) const {
    std::vector<std::size_t> all(sample_count());
    std::iota(all.begin(), all.end(), std::size_t{0});
    return mean_sample_gradient(*this, theta, all);
}

Vector FiniteSumObjective::residuals(const Vector&) const {
    throw std::logic_error("objective has no residual structure");
}

Matrix FiniteSumObjective::jacobian(const Vector&) const {
    throw std::logic_error("objective has no Jacobian structure");
}

Vector mean_sample_gradient_serial(const FiniteSumObjective& obj, const Vector& theta,
                                   const std::vector<std::size_t>& indices) {
    if (indices.empty()) throw std::invalid_argument("mean_sample_gradient: empty index set");
    Vector acc(obj.dim());
    for (std::size_t i : indices) acc += obj.sample_gradient(i, theta);
    acc *= 1.0 / static_cast<double>(indices.size());
    return acc;
}

Vector mean_sample_gradient(const FiniteSumObjective& obj, const Vector& theta,
                            const std::vector<std::size_t>& indices) {
    if (indices.empty()) throw std::invalid_argument("mean_sample_gradient: empty index set");
#ifdef _OPENMP
    const int max_threads = omp_get_max_threads();
    if (max_threads > 1 && indices.size() >= 16) {
        std::vector<Vector> partial(static_cast<std::size_t>(max_threads));
        const std::ptrdiff_t count = static_cast<std::ptrdiff_t>(indices.size());
#pragma omp parallel
        {
            const int tid = omp_get_thread_num();
            Vector local(obj.dim());
#pragma omp for schedule(static)
            for (std::ptrdiff_t k = 0; k < count; ++k)
                local += obj.sample_gradient(indices[static_cast<std::size_t>(k)], theta);
            partial[static_cast<std::size_t>(tid)] = std::move(local);
        }
        Vector acc(obj.dim());
        for (auto& p : partial)
            if (!p.empty()) acc += p;
        acc *= 1.0 / static_cast<double>(indices.size());
        return acc;
    }
#endif
    return mean_sample_gradient_serial(obj, theta, indices);
}

double mean_sample_value(const FiniteSumObjective& obj, const Vector& theta,
                         const std::vector<std::size_t>& indices) {
    if (indices.empty()) throw std::invalid_argument("mean_sample_value: empty index set");
    double acc = 0.0;
#ifdef _OPENMP
    const int max_threads = omp_get_max_threads();
    if (max_threads > 1 && indices.size() >= 64) {
        std::vector<double> partial(static_cast<std::size_t>(max_threads), 0.0);
        const std::ptrdiff_t count = static_cast<std::ptrdiff_t>(indices.size());
#pragma omp parallel
        {
            const int tid = omp_get_thread_num();
            double local = 0.0;
#pragma omp for schedule(static)
            for (std::ptrdiff_t k = 0; k < count; ++k)
                local += obj.sample_value(indices[static_cast<std::size_t>(k)], theta);
            partial[static_cast<std::size_t>(tid)] = local;
        }
        for (double p : partial) acc += p;
        return acc / static_cast<double>(indices.size());
    }
#endif
    for (std::size_t i : indices) acc += obj.sample_value(i, theta);
    return acc / static_cast<double>(indices.size());
}

}  // namespace optlab::problems
