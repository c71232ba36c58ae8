#pragma once

#include <memory>

#include "optlab/problems/dataset.hpp"
#include "optlab/problems/logistic.hpp"
#include "optlab/problems/pinn.hpp"
#include "optlab/problems/regression.hpp"
#include "optlab/problems/surrogate.hpp"

namespace optlab::problems {

/// Regression of u(x) = sin(2πx) + 0.5·sin(8πx) + 0.2·sin(32πx) sampled at
/// 256 equispaced points x_i = i/256, with a 1-64-64-1 tanh network. The
/// three sinusoids are mutually orthogonal on this grid.
struct SpectralBiasFixture {
    Dataset data;
    admodel::MlpSpec net;
    Vector theta0;
    std::vector<double> grid;
    std::vector<double> band_frequencies;  // angular: 2π, 8π, 32π
    std::vector<double> band_amplitudes;   // 1, 0.5, 0.2

    static double target(double x);
    std::shared_ptr<LeastSquaresObjective> objective() const;
};
SpectralBiasFixture spectral_bias_fixture(std::uint64_t seed = 1);

/// Regression of sin(πx₁) + cos(πx₂) on an 8×8 grid over [−1,1]², with a
/// 2-24-24-1 tanh network.
struct Regression2dFixture {
    Dataset data;
    admodel::MlpSpec net;
    Vector theta0;

    static double target(double x1, double x2);
    std::shared_ptr<LeastSquaresObjective> objective() const;
};
Regression2dFixture regression_2d_fixture(std::uint64_t seed = 2);

/// Two-parameter Poisson surrogate with the uniform and refined collocation
/// sets of the 1-D sampling study.
struct PoissonSurrogateFixture {
    std::vector<double> uniform_points;  // {0.1, 0.3, 0.5, 0.7, 0.9}
    std::vector<double> refined_points;  // {0.1, 0.3, 0.5, 0.7, 0.85, 0.9, 0.95}

    std::shared_ptr<PoissonSurrogate> objective(const std::vector<double>& points) const;
};
PoissonSurrogateFixture poisson_surrogate_fixture();

/// 1-D Poisson PINN −u″ = q with manufactured solution u(x) = sin(πx),
/// q(x) = π²·sin(πx), homogeneous Dirichlet boundary, 1-16-16-1 tanh net.
struct PinnPoissonFixture {
    admodel::MlpSpec net;
    CollocationSet colloc;
    PdeForm pde;
    Vector theta0;

    std::shared_ptr<PinnObjective> objective() const;
};
PinnPoissonFixture pinn_poisson_fixture(std::uint64_t seed = 3, std::size_t interior_points = 64);

/// Synthetic binary classification: two Gaussian blobs in R², inputs
/// augmented with a constant 1 feature for the bias.
Dataset two_gaussians_dataset(std::size_t samples = 6000, std::uint64_t seed = 4);

}  // namespace optlab::problems
