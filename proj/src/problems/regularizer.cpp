#include "optlab/problems/regularizer.hpp"

#include <cmath>
#include <stdexcept>

namespace optlab::problems {

L2Penalty::L2Penalty(double gamma) : gamma_(gamma) {
    if (gamma < 0.0) throw std::invalid_argument("L2Penalty: gamma must be >= 0");
}

double L2Penalty::value(const Vector& theta) const { return gamma_ * numkit::dot(theta, theta); }

Vector L2Penalty::gradient(const Vector& theta) const {
    Vector g = theta;
    g *= 2.0 * gamma_;
    return g;
}

ModelGradientPenalty::ModelGradientPenalty(std::shared_ptr<RegressionModel> model,
                                           std::vector<Vector> points, double gamma)
    : model_(std::move(model)), points_(std::move(points)), gamma_(gamma) {
    if (gamma < 0.0) throw std::invalid_argument("ModelGradientPenalty: gamma must be >= 0");
    if (points_.empty()) throw std::invalid_argument("ModelGradientPenalty: no points");
}

double ModelGradientPenalty::value(const Vector& theta) const {
    double acc = 0.0;
    for (const auto& x : points_) {
        const Vector g = model_->param_gradient(theta, x);
        acc += numkit::dot(g, g);
    }
    return gamma_ * acc / static_cast<double>(points_.size());
}

Vector ModelGradientPenalty::gradient(const Vector& theta) const {
    Vector total(theta.size());
    for (const auto& x : points_) {
        const Vector g = model_->param_gradient(theta, x);
        const double gn = numkit::norm2(g);
        if (gn == 0.0) continue;
        // d/dθ ‖g‖² = 2·H·g, approximated by a symmetric difference of g along g
        const double eps = 1e-6 * (1.0 + numkit::norm2(theta)) / gn;
        Vector tp = theta, tm = theta;
        numkit::axpy(eps, g, tp);
        numkit::axpy(-eps, g, tm);
        Vector hv = model_->param_gradient(tp, x);
        hv -= model_->param_gradient(tm, x);
        hv *= 1.0 / (2.0 * eps);
        numkit::axpy(2.0, hv, total);
    }
    total *= gamma_ / static_cast<double>(points_.size());
    return total;
}

RegularizedObjective::RegularizedObjective(std::shared_ptr<FiniteSumObjective> base,
                                           std::shared_ptr<Penalty> penalty)
    : base_(std::move(base)), penalty_(std::move(penalty)) {}

std::shared_ptr<RegularizedObjective> l2_regularized(std::shared_ptr<FiniteSumObjective> base,
                                                     double gamma) {
    return std::make_shared<RegularizedObjective>(std::move(base),
                                                  std::make_shared<L2Penalty>(gamma));
}

}  // namespace optlab::problems
