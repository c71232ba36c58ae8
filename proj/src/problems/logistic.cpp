#include "optlab/problems/logistic.hpp"

#include <cmath>
#include <stdexcept>

namespace optlab::problems {

namespace {

double sigmoid(double t) { return 1.0 / (1.0 + std::exp(-t)); }

/// log(1 + e^t) without overflow.
double softplus(double t) { return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t)); }

}  // namespace

LogisticObjective::LogisticObjective(Dataset data) : data_(std::move(data)) {
    data_.validate();
    if (data_.target_dim() != 1)
        throw std::invalid_argument("logistic_objective: scalar targets required");
    for (const auto& y : data_.targets)
        if (y[0] != 0.0 && y[0] != 1.0)
            throw std::invalid_argument("logistic_objective: targets must be 0 or 1");
}

double LogisticObjective::sample_value(std::size_t i, const Vector& theta) const {
    const double t = numkit::dot(data_.inputs[i], theta);
    // -y log ρ(t) - (1-y) log(1-ρ(t)) = softplus(t) - y t
    return softplus(t) - data_.targets[i][0] * t;
}

Vector LogisticObjective::sample_gradient(std::size_t i, const Vector& theta) const {
    const double t = numkit::dot(data_.inputs[i], theta);
    const double coeff = sigmoid(t) - data_.targets[i][0];
    Vector g = data_.inputs[i];
    g *= coeff;
    return g;
}

std::shared_ptr<LogisticObjective> logistic_objective(Dataset data) {
    return std::make_shared<LogisticObjective>(std::move(data));
}

}  // namespace optlab::problems
