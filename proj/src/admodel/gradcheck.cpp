#include "optlab/admodel/gradcheck.hpp"

#include <cmath>

#include "optlab/numkit/rng.hpp"

namespace optlab::admodel {

using numkit::Vector;

GradCheckReport gradcheck_at(const std::function<double(const Vector&)>& value,
                             const std::function<Vector(const Vector&)>& gradient,
                             const Vector& theta) {
    const Vector analytic = gradient(theta);
    Vector fd(theta.size());
    Vector probe = theta;
    for (std::size_t i = 0; i < theta.size(); ++i) {
        const double h = 1e-5 * (1.0 + std::abs(theta[i]));
        probe[i] = theta[i] + h;
        const double fp = value(probe);
        probe[i] = theta[i] - h;
        const double fm = value(probe);
        probe[i] = theta[i];
        fd[i] = (fp - fm) / (2.0 * h);
    }

    GradCheckReport rep;
    double worst_abs = -1.0;
    double diff2 = 0.0;
    for (std::size_t i = 0; i < theta.size(); ++i) {
        const double d = std::abs(analytic[i] - fd[i]);
        diff2 += d * d;
        if (d > worst_abs) {
            worst_abs = d;
            rep.worst_coordinate = i;
        }
    }
    const double scale = std::max({numkit::norm2(analytic), numkit::norm2(fd), 1e-300});
    rep.max_rel_err = std::sqrt(diff2) / scale;
    return rep;
}

GradCheckReport gradcheck(const std::function<double(const Vector&)>& value,
                          const std::function<Vector(const Vector&)>& gradient,
                          const Vector& theta, int points, std::uint64_t seed, double radius) {
    numkit::RngStream rng(seed);
    GradCheckReport worst;
    for (int p = 0; p < points; ++p) {
        Vector t = theta;
        if (p > 0)
            for (std::size_t i = 0; i < t.size(); ++i) t[i] += rng.uniform(-radius, radius);
        const GradCheckReport rep = gradcheck_at(value, gradient, t);
        if (rep.max_rel_err > worst.max_rel_err) worst = rep;
    }
    return worst;
}

}  // namespace optlab::admodel
