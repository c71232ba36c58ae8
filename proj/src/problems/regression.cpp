#include "optlab/problems/regression.hpp"

#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace optlab::problems {

MlpModel::MlpModel(admodel::MlpSpec spec) : spec_(std::move(spec)) {
    spec_.validate();
    if (spec_.output_dim() != 1)
        throw std::invalid_argument("MlpModel: scalar output required");
}

double MlpModel::predict(const Vector& theta, const Vector& x) const {
    return admodel::forward(spec_, theta, x)[0];
}

Vector MlpModel::param_gradient(const Vector& theta, const Vector& x) const {
    return admodel::param_gradient(spec_, theta, x, Vector{1.0});
}

LeastSquaresObjective::LeastSquaresObjective(std::shared_ptr<RegressionModel> model, Dataset data)
    : model_(std::move(model)), data_(std::move(data)) {
    data_.validate();
    if (data_.target_dim() != 1)
        throw std::invalid_argument("least_squares_objective: scalar targets required");
}

double LeastSquaresObjective::sample_value(std::size_t i, const Vector& theta) const {
    const double r = model_->predict(theta, data_.inputs[i]) - data_.targets[i][0];
    return 0.5 * r * r;
}

Vector LeastSquaresObjective::sample_gradient(std::size_t i, const Vector& theta) const {
    const double r = model_->predict(theta, data_.inputs[i]) - data_.targets[i][0];
    Vector g = model_->param_gradient(theta, data_.inputs[i]);
    g *= r;
    return g;
}

Vector LeastSquaresObjective::residuals(const Vector& theta) const {
    Vector r(data_.size());
    const std::ptrdiff_t m = static_cast<std::ptrdiff_t>(data_.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < m; ++i) {
        const std::size_t k = static_cast<std::size_t>(i);
        r[k] = model_->predict(theta, data_.inputs[k]) - data_.targets[k][0];
    }
    return r;
}

Matrix LeastSquaresObjective::jacobian(const Vector& theta) const {
    Matrix J(data_.size(), model_->param_count());
    const std::ptrdiff_t m = static_cast<std::ptrdiff_t>(data_.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < m; ++i) {
        const std::size_t k = static_cast<std::size_t>(i);
        J.set_row(k, model_->param_gradient(theta, data_.inputs[k]));
    }
    return J;
}

std::shared_ptr<LeastSquaresObjective> least_squares_objective(
    std::shared_ptr<RegressionModel> model, Dataset data) {
    return std::make_shared<LeastSquaresObjective>(std::move(model), std::move(data));
}

}  // namespace optlab::problems
