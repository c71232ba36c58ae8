#pragma once

#include <memory>

#include "optlab/admodel/mlp.hpp"
#include "optlab/problems/dataset.hpp"
#include "optlab/problems/objective.hpp"

namespace optlab::problems {

/// Scalar-output model with exact parameter gradients.
class RegressionModel {
public:
    virtual ~RegressionModel() = default;
    virtual std::size_t param_count() const = 0;
    virtual double predict(const Vector& theta, const Vector& x) const = 0;
    virtual Vector param_gradient(const Vector& theta, const Vector& x) const = 0;
};

/// h(x) = θᵀx.
class LinearModel : public RegressionModel {
public:
    explicit LinearModel(std::size_t dim) : dim_(dim) {}
    std::size_t param_count() const override { return dim_; }
    double predict(const Vector& theta, const Vector& x) const override {
        return numkit::dot(theta, x);
    }
    Vector param_gradient(const Vector&, const Vector& x) const override { return x; }

private:
    std::size_t dim_;
};

class MlpModel : public RegressionModel {
public:
    explicit MlpModel(admodel::MlpSpec spec);
    std::size_t param_count() const override { return spec_.param_count(); }
    double predict(const Vector& theta, const Vector& x) const override;
    Vector param_gradient(const Vector& theta, const Vector& x) const override;
    const admodel::MlpSpec& spec() const { return spec_; }

private:
    admodel::MlpSpec spec_;
};

/// f(θ) = (1/2m)·‖u(θ) − y‖² with residuals u(θ)−y and Jacobian rows
/// ∇_θ h_θ(x_i)ᵀ.
class LeastSquaresObjective : public FiniteSumObjective {
public:
    LeastSquaresObjective(std::shared_ptr<RegressionModel> model, Dataset data);

    std::size_t sample_count() const override { return data_.size(); }
    std::size_t dim() const override { return model_->param_count(); }
    double sample_value(std::size_t i, const Vector& theta) const override;
    Vector sample_gradient(std::size_t i, const Vector& theta) const override;

    bool has_jacobian() const override { return true; }
    Vector residuals(const Vector& theta) const override;
    Matrix jacobian(const Vector& theta) const override;

    const RegressionModel& model() const { return *model_; }
    const Dataset& data() const { return data_; }

private:
    std::shared_ptr<RegressionModel> model_;
    Dataset data_;
};

std::shared_ptr<LeastSquaresObjective> least_squares_objective(
    std::shared_ptr<RegressionModel> model, Dataset data);

}  // namespace optlab::problems
