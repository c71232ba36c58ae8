#include "optlab/sampleweight/weights.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace optlab::sampleweight {

Vector residual_point_weights(const Vector& residuals, double beta) {
    if (beta <= 0.0) throw std::invalid_argument("residual_point_weights: beta must be positive");
    if (residuals.empty()) throw std::invalid_argument("residual_point_weights: empty residuals");
    const std::size_t m = residuals.size();
    Vector xi(m);
    double mean = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        xi[j] = std::pow(std::abs(residuals[j]), beta);
        mean += xi[j];
    }
    mean /= static_cast<double>(m);
    if (mean == 0.0) return Vector(m, 1.0);  // all-zero residuals: uniform
    xi *= 1.0 / mean;
    return xi;
}

Vector gradnorm_update(const std::vector<LossTerm>& losses, const Vector& theta,
                       const Vector& gamma, const Vector& initial_losses, double zeta,
                       double step) {
    const std::size_t N = losses.size();
    if (N == 0) throw std::invalid_argument("gradnorm_update: no losses");
    if (gamma.size() != N || initial_losses.size() != N)
        throw std::invalid_argument("gradnorm_update: size mismatch");
    for (std::size_t i = 0; i < N; ++i) {
        if (gamma[i] <= 0.0) throw std::invalid_argument("gradnorm_update: gamma must be positive");
        if (initial_losses[i] <= 0.0)
            throw std::invalid_argument("gradnorm_update: initial losses must be positive");
    }

    Vector grad_norms(N), values(N);
    for (std::size_t i = 0; i < N; ++i) {
        grad_norms[i] = numkit::norm2(losses[i].gradient(theta));
        values[i] = losses[i].value(theta);
    }

    Vector G(N);
    double G_mean = 0.0;
    double speed_mean = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        G[i] = gamma[i] * grad_norms[i];
        G_mean += G[i];
        speed_mean += values[i] / initial_losses[i];
    }
    G_mean /= static_cast<double>(N);
    speed_mean /= static_cast<double>(N);

    Vector next = gamma;
    for (std::size_t i = 0; i < N; ++i) {
        const double r_i = (values[i] / initial_losses[i]) / speed_mean;
        const double target = G_mean * std::pow(r_i, zeta);
        const double diff = G[i] - target;
        const double sign = diff > 0.0 ? 1.0 : (diff < 0.0 ? -1.0 : 0.0);
        // ∂G_i/∂γ_i = ‖∇R̂_i‖; the target is treated as a constant
        next[i] -= step * sign * grad_norms[i];
        next[i] = std::max(next[i], 1e-12);
    }
    double total = 0.0;
    for (std::size_t i = 0; i < N; ++i) total += next[i];
    next *= static_cast<double>(N) / total;
    return next;
}

void save_weights_csv(const Vector& xi, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_weights_csv: cannot open " + path);
    out.precision(17);
    out << "j,xi\n";
    for (std::size_t j = 0; j < xi.size(); ++j) out << j << "," << xi[j] << "\n";
}

}  // namespace optlab::sampleweight
