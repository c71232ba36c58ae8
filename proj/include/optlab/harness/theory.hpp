#pragma once

#include <string>

#include "optlab/harness/synthetic.hpp"
#include "optlab/problems/objective.hpp"

namespace optlab::harness {

using problems::FiniteSumObjective;

/// One machine-readable check: theorem bound vs empirical value at the
/// stated slack.
struct Assertion {
    std::string name;
    double bound = 0.0;
    double empirical = 0.0;
    double slack = 1.0;  // pass when empirical ≤ slack·bound (or as named)
    bool pass = false;
};

struct CurvePoint {
    double x = 0.0;
    double empirical = 0.0;
    double bound = 0.0;
};

struct VerifyReport {
    std::string theorem;
    std::vector<Assertion> assertions;
    std::vector<CurvePoint> curve;
    std::string curve_label;  // meaning of the x column
    bool inconclusive = false;

    bool passed() const {
        for (const auto& a : assertions)
            if (!a.pass) return false;
        return !assertions.empty();
    }
};

void save_report_json(const VerifyReport& report, const std::string& path);
void save_report_curve_csv(const VerifyReport& report, const std::string& path);

/// Constant-step SGD on a strongly convex quadratic:
/// mean_seeds ‖θ_k−θ*‖² against (1−αμ)^k·D₀ + (2α/μ)σ² for every k ≤ K,
/// with 10% slack in the noisy case and none in the noiseless one. The
/// steady-state floor is also compared against its exact linear-dynamics
/// value Σ_c α²σ_c²/(1−(1−αλ_c)²).
VerifyReport verify_strongly_convex_bound(const SyntheticQuadratic& problem,
                                          const numkit::Vector& theta0, double alpha,
                                          std::size_t K, std::size_t seeds);

/// Steady-state error floors for a list of step sizes: halving α must
/// shrink the floor by a factor in [1.4, 2.6], and floors must be monotone
/// in α.
VerifyReport verify_noise_floor_scaling(const SyntheticQuadratic& problem,
                                        const numkit::Vector& theta0,
                                        const std::vector<double>& alphas, std::size_t seeds);

/// Averaged-iterate SGD with α = α₀/√K on an effectively non-strongly
/// convex quadratic: E[f(θ̄_K)−inf f] under the two-term bound and a
/// log-log slope within [−0.65, −0.35] across the given K values.
VerifyReport verify_convex_rate(const SyntheticQuadratic& problem, const numkit::Vector& theta0,
                                double alpha0, const std::vector<std::size_t>& K_list,
                                std::size_t seeds);

struct SmoothnessEstimate {
    double l_f = 0.0;    // smoothness of f
    double l_max = 0.0;  // max per-sample smoothness
    bool stable = true;  // estimates agreed across probe points
};

/// Largest Hessian eigenvalue estimates via power iteration on
/// finite-difference Hessian-vector products at probe points around θ₀.
SmoothnessEstimate estimate_smoothness(const FiniteSumObjective& obj, const numkit::Vector& theta0,
                                       std::size_t probe_points, std::uint64_t seed);

/// SGD with α = √(2/(L_f·L_max·K)) on a smooth nonconvex objective:
/// min_k E‖∇f(θ_k)‖² under √(2·L_f·L_max)·(2·f(θ₀) + Δ)/√K (inf f and Δ
/// conservatively taken as 0 and f(θ₀)-scale bounds documented in the
/// report), plus the 1/√K scaling check under K → 4K.
VerifyReport verify_nonconvex_stationarity(const FiniteSumObjective& obj,
                                           const numkit::Vector& theta0, std::size_t K,
                                           std::size_t seeds);

}  // namespace optlab::harness
