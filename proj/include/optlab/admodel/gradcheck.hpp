#pragma once

#include <cstddef>
#include <functional>

#include "optlab/numkit/vector.hpp"

namespace optlab::admodel {

struct GradCheckReport {
    /// ‖analytic − fd‖₂ / max(‖analytic‖₂, ‖fd‖₂, 1e-300)
    double max_rel_err = 0.0;
    /// coordinate of the largest absolute deviation at the worst point
    std::size_t worst_coordinate = 0;
};

/// Central finite differences with step h_i = 1e-5·(1+|θ_i|) against the
/// analytic gradient, at the given point.
GradCheckReport gradcheck_at(const std::function<double(const numkit::Vector&)>& value,
                             const std::function<numkit::Vector(const numkit::Vector&)>& gradient,
                             const numkit::Vector& theta);

/// Worst case over `points` random parameter points drawn as theta + U(-r,r)
/// perturbations from a seeded stream.
GradCheckReport gradcheck(const std::function<double(const numkit::Vector&)>& value,
                          const std::function<numkit::Vector(const numkit::Vector&)>& gradient,
                          const numkit::Vector& theta, int points, std::uint64_t seed,
                          double radius = 0.5);

}  // namespace optlab::admodel
