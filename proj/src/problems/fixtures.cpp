#include "optlab/problems/fixtures.hpp"

#include <cmath>
#include <numbers>

namespace optlab::problems {

using std::numbers::pi;

double SpectralBiasFixture::target(double x) {
    return std::sin(2.0 * pi * x) + 0.5 * std::sin(8.0 * pi * x) + 0.2 * std::sin(32.0 * pi * x);
}

std::shared_ptr<LeastSquaresObjective> SpectralBiasFixture::objective() const {
    return least_squares_objective(std::make_shared<MlpModel>(net), data);
}

SpectralBiasFixture spectral_bias_fixture(std::uint64_t seed) {
    SpectralBiasFixture fx;
    const std::size_t m = 256;
    for (std::size_t i = 0; i < m; ++i) {
        const double x = static_cast<double>(i) / static_cast<double>(m);
        fx.grid.push_back(x);
        fx.data.inputs.push_back(Vector{x});
        fx.data.targets.push_back(Vector{SpectralBiasFixture::target(x)});
    }
    fx.net.layer_widths = {1, 64, 64, 1};
    fx.net.activation = admodel::Activation::Tanh;
    fx.net.output_activation = admodel::Activation::Identity;
    numkit::RngStream rng(seed);
    fx.theta0 = admodel::init_params(fx.net, rng);
    // First layer re-drawn as tiled features: weight scale spanning the
    // highest target frequency and tanh transition points spread over
    // [0,1]. A zero-bias Xavier layer leaves the 8π/32π modes outside the
    // kernel's numerical range and no frequency separation shows up.
    numkit::RngStream tiling(seed + 100);
    for (std::size_t r = 0; r < fx.net.layer_widths[1]; ++r) {
        const double w = tiling.uniform(-120.0, 120.0);
        fx.theta0[fx.net.weight_offset(0) + r] = w;
        fx.theta0[fx.net.bias_offset(0) + r] = -w * tiling.uniform(0.0, 1.0);
    }
    fx.band_frequencies = {2.0 * pi, 8.0 * pi, 32.0 * pi};
    fx.band_amplitudes = {1.0, 0.5, 0.2};
    return fx;
}

double Regression2dFixture::target(double x1, double x2) {
    return std::sin(pi * x1) + std::cos(pi * x2);
}

std::shared_ptr<LeastSquaresObjective> Regression2dFixture::objective() const {
    return least_squares_objective(std::make_shared<MlpModel>(net), data);
}

Regression2dFixture regression_2d_fixture(std::uint64_t seed) {
    Regression2dFixture fx;
    const std::size_t side = 8;
    for (std::size_t i = 0; i < side; ++i) {
        for (std::size_t j = 0; j < side; ++j) {
            const double x1 = -1.0 + 2.0 * (static_cast<double>(i) + 0.5) / side;
            const double x2 = -1.0 + 2.0 * (static_cast<double>(j) + 0.5) / side;
            fx.data.inputs.push_back(Vector{x1, x2});
            fx.data.targets.push_back(Vector{Regression2dFixture::target(x1, x2)});
        }
    }
    fx.net.layer_widths = {2, 24, 24, 1};
    fx.net.activation = admodel::Activation::Tanh;
    fx.net.output_activation = admodel::Activation::Identity;
    numkit::RngStream rng(seed);
    fx.theta0 = admodel::init_params(fx.net, rng);
    return fx;
}

std::shared_ptr<PoissonSurrogate> PoissonSurrogateFixture::objective(
    const std::vector<double>& points) const {
    return std::make_shared<PoissonSurrogate>(points);
}

PoissonSurrogateFixture poisson_surrogate_fixture() {
    PoissonSurrogateFixture fx;
    fx.uniform_points = {0.1, 0.3, 0.5, 0.7, 0.9};
    fx.refined_points = {0.1, 0.3, 0.5, 0.7, 0.85, 0.9, 0.95};
    return fx;
}

std::shared_ptr<PinnObjective> PinnPoissonFixture::objective() const {
    return pinn_objective(net, colloc, pde);
}

PinnPoissonFixture pinn_poisson_fixture(std::uint64_t seed, std::size_t interior_points) {
    PinnPoissonFixture fx;
    fx.net.layer_widths = {1, 16, 16, 1};
    fx.net.activation = admodel::Activation::Tanh;
    fx.net.output_activation = admodel::Activation::Identity;

    for (std::size_t j = 0; j < interior_points; ++j) {
        const double x = (static_cast<double>(j) + 0.5) / static_cast<double>(interior_points);
        fx.colloc.interior.push_back(Vector{x});
    }
    fx.colloc.dirichlet = {Vector{0.0}, Vector{1.0}};
    fx.colloc.dirichlet_values = Vector{0.0, 0.0};

    fx.pde.order = 2;
    fx.pde.c2 = [](double) { return -1.0; };  // N[u] = -u''
    fx.pde.source = [](double x) { return pi * pi * std::sin(pi * x); };
    fx.pde.exact_solution = [](double x) { return std::sin(pi * x); };

    numkit::RngStream rng(seed);
    fx.theta0 = admodel::init_params(fx.net, rng);
    return fx;
}

Dataset two_gaussians_dataset(std::size_t samples, std::uint64_t seed) {
    numkit::RngStream rng(seed);
    Dataset data;
    // moderately overlapping classes; the feature scale (~3) keeps the
    // logistic Hessian well conditioned so noise floors are reachable
    // within short training budgets
    const double mu0[2] = {-3.0, -1.5};
    const double mu1[2] = {3.0, 1.5};
    for (std::size_t i = 0; i < samples; ++i) {
        const double label = (i % 2 == 0) ? 0.0 : 1.0;
        const double* mu = label == 0.0 ? mu0 : mu1;
        const double x1 = rng.normal(mu[0], 3.0);
        const double x2 = rng.normal(mu[1], 3.0);
        data.inputs.push_back(Vector{x1, x2, 3.0});
        data.targets.push_back(Vector{label});
    }
    return data;
}

}  // namespace optlab::problems
