#include "optlab/sampleweight/bilevel.hpp"

#include <cmath>
#include <stdexcept>

#include "optlab/numkit/eigen.hpp"
#include "optlab/numkit/matrix.hpp"

namespace optlab::sampleweight {

using numkit::Matrix;

HypergradientResult bilevel_hypergradient(const std::vector<LossTerm>& inner,
                                          const LossTerm& outer, const Vector& theta_star,
                                          const Vector& gamma, double stationarity_tol) {
    const std::size_t N = inner.size();
    const std::size_t n = theta_star.size();
    if (N == 0) throw std::invalid_argument("bilevel_hypergradient: no inner terms");
    if (gamma.size() != N) throw std::invalid_argument("bilevel_hypergradient: gamma size");
    if (n > 200) throw std::invalid_argument("bilevel_hypergradient: parameter dim too large");

    auto inner_gradient = [&](const Vector& t) {
        Vector g(n);
        for (std::size_t i = 0; i < N; ++i) numkit::axpy(gamma[i], inner[i].gradient(t), g);
        return g;
    };

    HypergradientResult out;
    out.inner_grad_norm = numkit::norm2(inner_gradient(theta_star));
    out.stationary = out.inner_grad_norm <= stationarity_tol;

    // H by central differences of the inner gradient, symmetrized
    Matrix H(n, n);
    Vector probe = theta_star;
    for (std::size_t j = 0; j < n; ++j) {
        const double h = 1e-5 * (1.0 + std::abs(theta_star[j]));
        probe[j] = theta_star[j] + h;
        Vector gp = inner_gradient(probe);
        probe[j] = theta_star[j] - h;
        Vector gm = inner_gradient(probe);
        probe[j] = theta_star[j];
        for (std::size_t i = 0; i < n; ++i) H(i, j) = (gp[i] - gm[i]) / (2.0 * h);
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double s = 0.5 * (H(i, j) + H(j, i));
            H(i, j) = s;
            H(j, i) = s;
        }

    const numkit::EigenDecomposition eig = numkit::sym_eigen(H);
    double max_abs = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        max_abs = std::max(max_abs, std::abs(eig.eigenvalues[i]));
    for (std::size_t i = 0; i < n; ++i)
        if (std::abs(eig.eigenvalues[i]) <= 1e-12 * std::max(max_abs, 1.0))
            throw std::runtime_error("bilevel_hypergradient: singular inner Hessian");

    // x = H⁻¹ ∇C via the eigendecomposition
    const Vector gc = outer.gradient(theta_star);
    Vector coeff = numkit::matvec_transposed(eig.eigenvectors, gc);
    for (std::size_t i = 0; i < n; ++i) coeff[i] /= eig.eigenvalues[i];
    const Vector x = numkit::matvec(eig.eigenvectors, coeff);

    out.hypergradient = Vector(N);
    for (std::size_t j = 0; j < N; ++j)
        out.hypergradient[j] = -numkit::dot(x, inner[j].gradient(theta_star));
    return out;
}

}  // namespace optlab::sampleweight
