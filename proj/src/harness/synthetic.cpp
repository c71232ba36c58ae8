#include "optlab/harness/synthetic.hpp"

#include <cmath>
#include <stdexcept>

namespace optlab::harness {

SyntheticQuadratic::SyntheticQuadratic(Vector lambdas, Vector b, std::size_t samples,
                                       double sigma_target, std::uint64_t seed)
    : lambdas_(std::move(lambdas)), b_(std::move(b)) {
    if (lambdas_.empty() || b_.size() != lambdas_.size())
        throw std::invalid_argument("SyntheticQuadratic: shape mismatch");
    if (samples == 0) throw std::invalid_argument("SyntheticQuadratic: needs samples");
    for (std::size_t i = 0; i < lambdas_.size(); ++i)
        if (lambdas_[i] < 0.0) throw std::invalid_argument("SyntheticQuadratic: negative curvature");

    const std::size_t n = lambdas_.size();
    RngStream rng(seed);
    shifts_.assign(samples, Vector(n));
    if (sigma_target > 0.0 && samples > 1) {
        const double sd = sigma_target / std::sqrt(static_cast<double>(n));
        Vector mean(n);
        for (auto& eps : shifts_)
            for (std::size_t c = 0; c < n; ++c) {
                eps[c] = rng.normal(0.0, sd);
                mean[c] += eps[c] / static_cast<double>(samples);
            }
        for (auto& eps : shifts_) eps -= mean;  // exact zero-mean noise
        // rescale so the realized variance hits the target exactly
        double realized = 0.0;
        for (const auto& eps : shifts_) realized += numkit::dot(eps, eps);
        realized /= static_cast<double>(samples);
        if (realized > 0.0) {
            const double scale = sigma_target / std::sqrt(realized);
            for (auto& eps : shifts_) eps *= scale;
        }
    }
    noise_var_ = Vector(lambdas_.size());
    for (const auto& eps : shifts_) {
        sigma_sq_ += numkit::dot(eps, eps);
        for (std::size_t c = 0; c < eps.size(); ++c) noise_var_[c] += eps[c] * eps[c];
    }
    sigma_sq_ /= static_cast<double>(samples);
    noise_var_ *= 1.0 / static_cast<double>(samples);
}

double SyntheticQuadratic::sample_value(std::size_t i, const Vector& theta) const {
    double v = 0.0;
    for (std::size_t c = 0; c < theta.size(); ++c)
        v += 0.5 * lambdas_[c] * theta[c] * theta[c] - (b_[c] + shifts_[i][c]) * theta[c];
    return v;
}

Vector SyntheticQuadratic::sample_gradient(std::size_t i, const Vector& theta) const {
    Vector g(theta.size());
    for (std::size_t c = 0; c < theta.size(); ++c)
        g[c] = lambdas_[c] * theta[c] - b_[c] - shifts_[i][c];
    return g;
}

double SyntheticQuadratic::value(const Vector& theta) const {
    double v = 0.0;
    for (std::size_t c = 0; c < theta.size(); ++c)
        v += 0.5 * lambdas_[c] * theta[c] * theta[c] - b_[c] * theta[c];
    return v;
}

Vector SyntheticQuadratic::gradient(const Vector& theta) const {
    Vector g(theta.size());
    for (std::size_t c = 0; c < theta.size(); ++c) g[c] = lambdas_[c] * theta[c] - b_[c];
    return g;
}

Vector SyntheticQuadratic::theta_star() const {
    Vector t(lambdas_.size());
    for (std::size_t c = 0; c < t.size(); ++c) {
        if (lambdas_[c] == 0.0) {
            if (b_[c] != 0.0)
                throw std::runtime_error("SyntheticQuadratic: unbounded below along flat mode");
            t[c] = 0.0;
        } else {
            t[c] = b_[c] / lambdas_[c];
        }
    }
    return t;
}

double SyntheticQuadratic::f_star() const { return value(theta_star()); }

double SyntheticQuadratic::mu() const {
    double m = lambdas_[0];
    for (std::size_t c = 1; c < lambdas_.size(); ++c) m = std::min(m, lambdas_[c]);
    return m;
}

double SyntheticQuadratic::l_max() const {
    double m = lambdas_[0];
    for (std::size_t c = 1; c < lambdas_.size(); ++c) m = std::max(m, lambdas_[c]);
    return m;
}

std::shared_ptr<SyntheticQuadratic> quadratic_1_10(double sigma_target, std::size_t samples,
                                                   std::uint64_t seed) {
    return std::make_shared<SyntheticQuadratic>(Vector{1.0, 10.0}, Vector{0.0, 0.0}, samples,
                                                sigma_target, seed);
}

std::shared_ptr<SyntheticQuadratic> quadratic_logspaced(std::size_t dim, double sigma_target,
                                                        std::size_t samples, std::uint64_t seed) {
    Vector lambdas(dim), b(dim);
    for (std::size_t c = 0; c < dim; ++c) {
        const double t = dim > 1 ? static_cast<double>(c) / static_cast<double>(dim - 1) : 0.0;
        lambdas[c] = std::pow(10.0, -4.0 * (1.0 - t));  // 1e-4 .. 1
    }
    return std::make_shared<SyntheticQuadratic>(std::move(lambdas), std::move(b), samples,
                                                sigma_target, seed);
}

}  // namespace optlab::harness
