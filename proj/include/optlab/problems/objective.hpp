#pragma once

#include <cstddef>
#include <vector>

#include "optlab/numkit/matrix.hpp"
#include "optlab/numkit/vector.hpp"

namespace optlab::problems {

using numkit::Matrix;
using numkit::Vector;

/// Finite-sum objective f(θ) = (1/m) Σ_i f_i(θ).
///
/// When a least-squares structure exists (has_jacobian() true), residuals
/// and Jacobian rows are scaled so that value(θ) = (1/2m)·‖residuals(θ)‖²
/// and gradient(θ) = (1/m)·J(θ)ᵀ·residuals(θ) hold exactly.
class FiniteSumObjective {
public:
    virtual ~FiniteSumObjective() = default;

    virtual std::size_t sample_count() const = 0;
    virtual std::size_t dim() const = 0;

    virtual double sample_value(std::size_t i, const Vector& theta) const = 0;
    virtual Vector sample_gradient(std::size_t i, const Vector& theta) const = 0;

    virtual double value(const Vector& theta) const;
    virtual Vector gradient(const Vector& theta) const;

    virtual bool has_jacobian() const { return false; }
    virtual Vector residuals(const Vector& theta) const;
    virtual Matrix jacobian(const Vector& theta) const;
};

/// Mean of sample gradients over an index subset (sum order fixed by the
/// subset order; OpenMP partials are reduced in thread order so results do
/// not depend on scheduling).
Vector mean_sample_gradient(const FiniteSumObjective& obj, const Vector& theta,
                            const std::vector<std::size_t>& indices);
Vector mean_sample_gradient_serial(const FiniteSumObjective& obj, const Vector& theta,
                                   const std::vector<std::size_t>& indices);

double mean_sample_value(const FiniteSumObjective& obj, const Vector& theta,
                         const std::vector<std::size_t>& indices);

}  // namespace optlab::problems
