#include "optlab/sampleweight/density.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace optlab::sampleweight {

void SamplingDensity::validate() const {
    if (candidate_pool.empty()) throw std::invalid_argument("SamplingDensity: empty pool");
    if (probabilities.size() != candidate_pool.size())
        throw std::invalid_argument("SamplingDensity: probability count mismatch");
    double sum = 0.0;
    for (std::size_t j = 0; j < probabilities.size(); ++j) {
        if (probabilities[j] < 0.0) throw std::invalid_argument("SamplingDensity: negative p");
        sum += probabilities[j];
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("SamplingDensity: probabilities must sum to 1");
}

SamplingDensity update_density(std::vector<Vector> pool, const Vector& indicator, double beta,
                               std::size_t stage) {
    if (beta <= 0.0) throw std::invalid_argument("update_density: beta must be positive");
    if (indicator.size() != pool.size())
        throw std::invalid_argument("update_density: indicator count mismatch");
    SamplingDensity density;
    density.candidate_pool = std::move(pool);
    density.beta = beta;
    density.stage = stage;
    density.probabilities = Vector(indicator.size());
    double total = 0.0;
    for (std::size_t j = 0; j < indicator.size(); ++j) {
        if (indicator[j] < 0.0) throw std::invalid_argument("update_density: negative indicator");
        density.probabilities[j] = std::pow(indicator[j], beta);
        total += density.probabilities[j];
    }
    if (total <= 0.0) throw std::invalid_argument("update_density: all-zero indicator");
    density.probabilities *= 1.0 / total;
    return density;
}

SamplingDensity uniform_density_1d(std::size_t points, double lo, double hi) {
    if (points == 0) throw std::invalid_argument("uniform_density_1d: empty pool");
    SamplingDensity density;
    for (std::size_t j = 0; j < points; ++j) {
        const double x = lo + (hi - lo) * (static_cast<double>(j) + 0.5) / points;
        density.candidate_pool.push_back(Vector{x});
    }
    density.probabilities = Vector(points, 1.0 / static_cast<double>(points));
    return density;
}

std::vector<std::size_t> draw_from_density(const SamplingDensity& density, std::size_t count,
                                           RngStream& rng) {
    density.validate();
    std::vector<std::size_t> drawn;
    drawn.reserve(count);
    for (std::size_t i = 0; i < count; ++i) drawn.push_back(rng.choice(density.probabilities));
    return drawn;
}

ImportanceWeightedRisk::ImportanceWeightedRisk(SamplingDensity density,
                                               std::vector<std::size_t> drawn,
                                               ResidualFn residual,
                                               ResidualGradFn residual_gradient,
                                               std::size_t param_dim)
    : density_(std::move(density)),
      drawn_(std::move(drawn)),
      residual_(std::move(residual)),
      residual_gradient_(std::move(residual_gradient)),
      param_dim_(param_dim) {
    density_.validate();
    if (drawn_.empty()) throw std::invalid_argument("ImportanceWeightedRisk: no drawn points");
    for (std::size_t j : drawn_) {
        if (j >= density_.candidate_pool.size())
            throw std::out_of_range("ImportanceWeightedRisk: drawn index out of pool");
        if (density_.probabilities[j] <= 0.0)
            throw std::invalid_argument("ImportanceWeightedRisk: zero-probability drawn point");
    }
}

double ImportanceWeightedRisk::sample_value(std::size_t i, const Vector& theta) const {
    const std::size_t j = drawn_[i];
    const double r = residual_(density_.candidate_pool[j], theta);
    return r * r / density_.probabilities[j];
}

Vector ImportanceWeightedRisk::sample_gradient(std::size_t i, const Vector& theta) const {
    const std::size_t j = drawn_[i];
    const double r = residual_(density_.candidate_pool[j], theta);
    Vector g = residual_gradient_(density_.candidate_pool[j], theta);
    g *= 2.0 * r / density_.probabilities[j];
    return g;
}

ResampleResult resample_interior(const std::function<double(double)>& residual_abs,
                                 const ResamplingConfig& config, std::size_t stage,
                                 RngStream& rng) {
    auto base = uniform_density_1d(config.pool_points);
    Vector eta(config.pool_points);
    for (std::size_t j = 0; j < config.pool_points; ++j)
        eta[j] = residual_abs(base.candidate_pool[j][0]);
    ResampleResult out;
    out.density = update_density(std::move(base.candidate_pool), eta, config.beta, stage);
    const auto drawn = draw_from_density(out.density, config.draw_count, rng);
    out.weights = Vector(drawn.size());
    double total = 0.0;
    for (std::size_t i = 0; i < drawn.size(); ++i) {
        out.points.push_back(out.density.candidate_pool[drawn[i]]);
        // importance correction against the uniform pool density
        out.weights[i] = 1.0 / (static_cast<double>(config.pool_points) *
                                out.density.probabilities[drawn[i]]);
        total += out.weights[i];
    }
    out.weights *= static_cast<double>(drawn.size()) / total;
    return out;
}

void save_density_csv(const SamplingDensity& density, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_density_csv: cannot open " + path);
    out.precision(17);
    out << "x,p\n";
    for (std::size_t j = 0; j < density.candidate_pool.size(); ++j)
        out << density.candidate_pool[j][0] << "," << density.probabilities[j] << "\n";
}

}  // namespace optlab::sampleweight
