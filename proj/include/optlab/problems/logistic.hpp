#pragma once

#include <memory>

#include "optlab/problems/dataset.hpp"
#include "optlab/problems/objective.hpp"

namespace optlab::problems {

/// Binary logistic regression with the linear model ρ(xᵀθ).
class LogisticObjective : public FiniteSumObjective {
public:
    /// Targets must be 0 or 1 (scalar).
    explicit LogisticObjective(Dataset data);

    std::size_t sample_count() const override { return data_.size(); }
    std::size_t dim() const override { return data_.input_dim(); }
    double sample_value(std::size_t i, const Vector& theta) const override;
    Vector sample_gradient(std::size_t i, const Vector& theta) const override;

    const Dataset& data() const { return data_; }

private:
    Dataset data_;
};

std::shared_ptr<LogisticObjective> logistic_objective(Dataset data);

}  // namespace optlab::problems
