#pragma once

#include "optlab/kerneldx/ntk.hpp"
#include "optlab/problems/fixtures.hpp"

namespace optlab::kerneldx {

/// Mode-wise decomposition of a function-space error under kernel gradient
/// descent: e_k = Σ c_i (1−αλ_i)^k q_i.
struct ModeDecay {
    Vector coefficients;  // c = Qᵀe₀
    Vector decay_factors;  // 1 − αλ_i
    const EigenDecomposition* eigen = nullptr;
};

ModeDecay mode_decay(const KernelReport& report, const Vector& e0, double alpha);

/// Q·diag((1−αλ_i)^k)·Qᵀ·e₀.
Vector mode_decay_predict(const KernelReport& report, const Vector& e0, double alpha,
                          std::size_t k);

/// Relative error per frequency band: ‖projection of (h_θ − u) onto the
/// band sinusoid‖ / ‖band component of u‖, via discrete inner products on
/// the fixture grid. One row per θ, one column per band.
std::vector<Vector> spectral_bias_report(const problems::SpectralBiasFixture& fixture,
                                         const std::vector<Vector>& thetas);

}  // namespace optlab::kerneldx
