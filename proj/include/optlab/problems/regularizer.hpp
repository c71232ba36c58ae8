#pragma once

#include <memory>

#include "optlab/problems/objective.hpp"
#include "optlab/problems/regression.hpp"

namespace optlab::problems {

/// Additive penalty term with value and gradient.
class Penalty {
public:
    virtual ~Penalty() = default;
    virtual double value(const Vector& theta) const = 0;
    virtual Vector gradient(const Vector& theta) const = 0;
};

/// γ‖θ‖².
class L2Penalty : public Penalty {
public:
    explicit L2Penalty(double gamma);
    double value(const Vector& theta) const override;
    Vector gradient(const Vector& theta) const override;

private:
    double gamma_;
};

/// γ·mean_i ‖∇_θ h_θ(x_i)‖² over the given points. The gradient needs
/// model second derivatives; it is formed from central differences of the
/// model gradient along itself (step 1e-6·(1+‖θ‖)/‖g‖).
class ModelGradientPenalty : public Penalty {
public:
    ModelGradientPenalty(std::shared_ptr<RegressionModel> model, std::vector<Vector> points,
                         double gamma);
    double value(const Vector& theta) const override;
    Vector gradient(const Vector& theta) const override;

private:
    std::shared_ptr<RegressionModel> model_;
    std::vector<Vector> points_;
    double gamma_;
};

/// base objective + penalty, applied uniformly to every sample term so the
/// finite-sum identities keep holding.
class RegularizedObjective : public FiniteSumObjective {
public:
    RegularizedObjective(std::shared_ptr<FiniteSumObjective> base, std::shared_ptr<Penalty> penalty);

    std::size_t sample_count() const override { return base_->sample_count(); }
    std::size_t dim() const override { return base_->dim(); }
    double sample_value(std::size_t i, const Vector& theta) const override {
        return base_->sample_value(i, theta) + penalty_->value(theta);
    }
    Vector sample_gradient(std::size_t i, const Vector& theta) const override {
        Vector g = base_->sample_gradient(i, theta);
        g += penalty_->gradient(theta);
        return g;
    }
    double value(const Vector& theta) const override {
        return base_->value(theta) + penalty_->value(theta);
    }
    Vector gradient(const Vector& theta) const override {
        Vector g = base_->gradient(theta);
        g += penalty_->gradient(theta);
        return g;
    }

private:
    std::shared_ptr<FiniteSumObjective> base_;
    std::shared_ptr<Penalty> penalty_;
};

std::shared_ptr<RegularizedObjective> l2_regularized(std::shared_ptr<FiniteSumObjective> base,
                                                     double gamma);

}  // namespace optlab::problems
