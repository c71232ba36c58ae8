#include "optlab/kerneldx/modes.hpp"

#include <cmath>

namespace optlab::kerneldx {

ModeDecay mode_decay(const KernelReport& report, const Vector& e0, double alpha) {
    ModeDecay md;
    md.coefficients = numkit::matvec_transposed(report.eigen.eigenvectors, e0);
    md.decay_factors = Vector(report.eigen.eigenvalues.size());
    for (std::size_t i = 0; i < md.decay_factors.size(); ++i)
        md.decay_factors[i] = 1.0 - alpha * report.eigen.eigenvalues[i];
    md.eigen = &report.eigen;
    return md;
}

Vector mode_decay_predict(const KernelReport& report, const Vector& e0, double alpha,
                          std::size_t k) {
    const ModeDecay md = mode_decay(report, e0, alpha);
    Vector scaled = md.coefficients;
    for (std::size_t i = 0; i < scaled.size(); ++i)
        scaled[i] *= std::pow(md.decay_factors[i], static_cast<double>(k));
    return numkit::matvec(report.eigen.eigenvectors, scaled);
}

std::vector<Vector> spectral_bias_report(const problems::SpectralBiasFixture& fixture,
                                         const std::vector<Vector>& thetas) {
    const std::size_t m = fixture.grid.size();
    const std::size_t bands = fixture.band_frequencies.size();

    // band basis values and their squared norms on the grid
    std::vector<Vector> basis(bands, Vector(m));
    Vector basis_norm2(bands);
    for (std::size_t b = 0; b < bands; ++b) {
        for (std::size_t i = 0; i < m; ++i)
            basis[b][i] = std::sin(fixture.band_frequencies[b] * fixture.grid[i]);
        basis_norm2[b] = numkit::dot(basis[b], basis[b]);
    }

    std::vector<Vector> report;
    report.reserve(thetas.size());
    for (const auto& theta : thetas) {
        Vector err(m);
        for (std::size_t i = 0; i < m; ++i) {
            const double h =
                admodel::forward(fixture.net, theta, fixture.data.inputs[i])[0];
            err[i] = h - fixture.data.targets[i][0];
        }
        Vector rel(bands);
        for (std::size_t b = 0; b < bands; ++b)
            rel[b] = std::abs(numkit::dot(err, basis[b])) /
                     (fixture.band_amplitudes[b] * basis_norm2[b]);
        report.push_back(std::move(rel));
    }
    return report;
}

}  // namespace optlab::kerneldx
