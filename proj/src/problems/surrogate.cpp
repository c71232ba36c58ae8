#include "optlab/problems/surrogate.hpp"

#include <cmath>
#include <stdexcept>

namespace optlab::problems {

PoissonSurrogate::PoissonSurrogate(std::vector<double> points, Vector weights)
    : points_(std::move(points)), weights_(std::move(weights)) {
    if (points_.empty()) throw std::invalid_argument("PoissonSurrogate: empty point set");
    if (!weights_.empty() && weights_.size() != points_.size())
        throw std::invalid_argument("PoissonSurrogate: weight count mismatch");
}

double PoissonSurrogate::forcing(double x) {
    const double d = x - 0.9;
    return 10.0 * std::exp(-100.0 * d * d);
}

double PoissonSurrogate::residual(double x, const Vector& theta) {
    return -phi1_dd(x) * theta[0] - phi2_dd(x) * theta[1] - forcing(x);
}

Vector PoissonSurrogate::residual_jacobian_row(double x) {
    return Vector{-phi1_dd(x), -phi2_dd(x)};
}

double PoissonSurrogate::sample_value(std::size_t i, const Vector& theta) const {
    const double r = residual(points_[i], theta);
    return weight(i) * r * r;
}

Vector PoissonSurrogate::sample_gradient(std::size_t i, const Vector& theta) const {
    const double r = residual(points_[i], theta);
    Vector g = residual_jacobian_row(points_[i]);
    g *= 2.0 * weight(i) * r;
    return g;
}

Vector PoissonSurrogate::residuals(const Vector& theta) const {
    Vector rho(points_.size());
    for (std::size_t i = 0; i < points_.size(); ++i)
        rho[i] = std::sqrt(2.0 * weight(i)) * residual(points_[i], theta);
    return rho;
}

Matrix PoissonSurrogate::jacobian(const Vector& theta) const {
    (void)theta;
    Matrix J(points_.size(), 2);
    for (std::size_t i = 0; i < points_.size(); ++i) {
        Vector row = residual_jacobian_row(points_[i]);
        row *= std::sqrt(2.0 * weight(i));
        J.set_row(i, row);
    }
    return J;
}

}  // namespace optlab::problems
