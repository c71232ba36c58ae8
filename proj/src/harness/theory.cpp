#include "optlab/harness/theory.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <stdexcept>

#include "json.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace optlab::harness {

using numkit::RngStream;
using numkit::Vector;

void save_report_json(const VerifyReport& report, const std::string& path) {
    nlohmann::json j;
    j["theorem"] = report.theorem;
    j["passed"] = report.passed();
    j["inconclusive"] = report.inconclusive;
    j["assertions"] = nlohmann::json::array();
    for (const auto& a : report.assertions)
        j["assertions"].push_back({{"name", a.name},
                                   {"bound", a.bound},
                                   {"empirical", a.empirical},
                                   {"slack", a.slack},
                                   {"pass", a.pass}});
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_report_json: cannot open " + path);
    out << j.dump(2) << "\n";
}

void save_report_curve_csv(const VerifyReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_report_curve_csv: cannot open " + path);
    out.precision(17);
    out << report.curve_label << ",empirical,bound\n";
    for (const auto& p : report.curve) out << p.x << "," << p.empirical << "," << p.bound << "\n";
}

namespace {

/// Mean over seeds of per-iteration observables of single-sample SGD.
/// Seeds run in parallel; the reduction is in seed order regardless of
/// scheduling.
std::vector<double> seed_mean_sgd(
    const FiniteSumObjective& obj, const Vector& theta0, double alpha, std::size_t K,
    std::size_t seeds, const std::function<double(const Vector&, std::size_t)>& observe) {
    std::vector<std::vector<double>> per_seed(seeds);
    const std::ptrdiff_t S = static_cast<std::ptrdiff_t>(seeds);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t s = 0; s < S; ++s) {
        RngStream rng(static_cast<std::uint64_t>(s) + 1);
        Vector theta = theta0;
        std::vector<double> obs(K + 1);
        obs[0] = observe(theta, 0);
        for (std::size_t k = 0; k < K; ++k) {
            const std::size_t i = rng.uniform_index(obj.sample_count());
            const Vector g = obj.sample_gradient(i, theta);
            numkit::axpy(-alpha, g, theta);
            obs[k + 1] = observe(theta, k + 1);
        }
        per_seed[static_cast<std::size_t>(s)] = std::move(obs);
    }
    std::vector<double> mean(K + 1, 0.0);
    for (const auto& obs : per_seed)
        for (std::size_t k = 0; k <= K; ++k) mean[k] += obs[k];
    for (double& v : mean) v /= static_cast<double>(seeds);
    return mean;
}

double error_sq(const Vector& theta, const Vector& star) {
    double e = 0.0;
    for (std::size_t c = 0; c < theta.size(); ++c) {
        const double d = theta[c] - star[c];
        e += d * d;
    }
    return e;
}

/// Exact steady-state of the linear noise dynamics, per coordinate
/// α²σ_c²/(1−(1−αλ_c)²).
double exact_noise_floor(const SyntheticQuadratic& problem, double alpha) {
    double floor = 0.0;
    const Vector& var = problem.noise_var_per_coord();
    for (std::size_t c = 0; c < var.size(); ++c) {
        const double contraction = 1.0 - alpha * problem.lambdas()[c];
        const double denom = 1.0 - contraction * contraction;
        if (denom > 0.0) floor += alpha * alpha * var[c] / denom;
    }
    return floor;
}

}  // namespace

VerifyReport verify_strongly_convex_bound(const SyntheticQuadratic& problem, const Vector& theta0,
                                          double alpha, std::size_t K, std::size_t seeds) {
    const double mu = problem.mu();
    const double lmax = problem.l_max();
    if (!(alpha < 1.0 / (2.0 * lmax)))
        throw std::invalid_argument("verify_strongly_convex_bound: needs alpha < 1/(2 L_max)");

    VerifyReport report;
    report.theorem = "sgd_strongly_convex";
    report.curve_label = "k";

    const Vector star = problem.theta_star();
    const double d0 = error_sq(theta0, star);
    const double sigma_sq = problem.sigma_sq();
    const double noise_floor = 2.0 * alpha / mu * sigma_sq;
    const bool noiseless = sigma_sq == 0.0;
    const double slack = noiseless ? 1.0 : 1.1;

    const auto mean = seed_mean_sgd(problem, theta0, alpha, K, noiseless ? 1 : seeds,
                                    [&](const Vector& t, std::size_t) { return error_sq(t, star); });

    double worst_ratio = 0.0;
    std::size_t worst_k = 0;
    for (std::size_t k = 0; k <= K; ++k) {
        const double bound = std::pow(1.0 - alpha * mu, static_cast<double>(k)) * d0 + noise_floor;
        if (k % std::max<std::size_t>(K / 200, 1) == 0 || k == K)
            report.curve.push_back(CurvePoint{static_cast<double>(k), mean[k], bound});
        const double ratio = mean[k] / bound;
        if (ratio > worst_ratio) {
            worst_ratio = ratio;
            worst_k = k;
        }
    }
    report.assertions.push_back(Assertion{
        "mean_error_under_bound_all_k (worst k=" + std::to_string(worst_k) + ")", slack,
        worst_ratio, slack, worst_ratio <= slack});

    if (!noiseless) {
        // steady-state estimate over the last quarter of the horizon
        double floor_est = 0.0;
        std::size_t count = 0;
        for (std::size_t k = (3 * K) / 4; k <= K; ++k, ++count) floor_est += mean[k];
        floor_est /= static_cast<double>(count);
        const double exact = exact_noise_floor(problem, alpha);
        report.assertions.push_back(Assertion{"steady_state_below_theorem_floor", noise_floor,
                                              floor_est, 1.0, floor_est <= noise_floor});
        report.assertions.push_back(Assertion{"steady_state_matches_linear_dynamics", exact,
                                              floor_est, 1.3,
                                              floor_est >= exact / 1.3 && floor_est <= exact * 1.3});
    }
    return report;
}

VerifyReport verify_noise_floor_scaling(const SyntheticQuadratic& problem, const Vector& theta0,
                                        const std::vector<double>& alphas, std::size_t seeds) {
    VerifyReport report;
    report.theorem = "sgd_noise_floor_scaling";
    report.curve_label = "alpha";
    const double mu = problem.mu();
    const double lmax = problem.l_max();
    const Vector star = problem.theta_star();

    std::vector<double> floors;
    for (double alpha : alphas) {
        if (!(alpha < 1.0 / (2.0 * lmax)))
            throw std::invalid_argument("verify_noise_floor_scaling: needs alpha < 1/(2 L_max)");
        // long enough that the tail window holds 25 time constants, so the
        // noiseless transient decays below the 1e-20 detection level
        const auto K = static_cast<std::size_t>(std::ceil(50.0 / (alpha * mu)));
        const auto mean = seed_mean_sgd(
            problem, theta0, alpha, K, seeds,
            [&](const Vector& t, std::size_t) { return error_sq(t, star); });
        double floor = 0.0;
        std::size_t count = 0;
        for (std::size_t k = K / 2; k <= K; ++k, ++count) floor += mean[k];
        floor /= static_cast<double>(count);
        if (problem.sigma_sq() == 0.0) {
            report.assertions.push_back(
                Assertion{"noiseless_floor_vanishes", 1e-20, floor, 1.0, floor <= 1e-20});
        }
        floors.push_back(floor);
        report.curve.push_back(CurvePoint{alpha, floor, exact_noise_floor(problem, alpha)});
    }

    for (std::size_t i = 0; i + 1 < alphas.size(); ++i) {
        if (std::abs(alphas[i] / alphas[i + 1] - 2.0) < 1e-12 && floors[i + 1] > 0.0) {
            const double ratio = floors[i] / floors[i + 1];
            report.assertions.push_back(Assertion{"halving_alpha_halves_floor (ratio)", 2.0, ratio,
                                                  0.6, ratio >= 1.4 && ratio <= 2.6});
        }
        if (problem.sigma_sq() > 0.0)
            report.assertions.push_back(Assertion{"floor_monotone_in_alpha", floors[i],
                                                  floors[i + 1], 1.0,
                                                  floors[i + 1] <= floors[i] * 1.05});
    }
    return report;
}

VerifyReport verify_convex_rate(const SyntheticQuadratic& problem, const Vector& theta0,
                                double alpha0, const std::vector<std::size_t>& K_list,
                                std::size_t seeds) {
    const double lmax = problem.l_max();
    if (!(alpha0 <= 1.0 / (4.0 * lmax)))
        throw std::invalid_argument("verify_convex_rate: needs alpha0 <= 1/(4 L_max)");

    VerifyReport report;
    report.theorem = "sgd_convex_rate";
    report.curve_label = "K";
    const Vector star = problem.theta_star();
    const double d0 = error_sq(theta0, star);
    const double inf_f = problem.f_star();

    std::vector<double> gaps;
    for (std::size_t K : K_list) {
        const double alpha = alpha0 / std::sqrt(static_cast<double>(K));
        std::vector<double> per_seed(seeds, 0.0);
        const std::ptrdiff_t S = static_cast<std::ptrdiff_t>(seeds);
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t s = 0; s < S; ++s) {
            RngStream rng(static_cast<std::uint64_t>(s) + 1);
            Vector theta = theta0;
            Vector sum(theta0.size());
            for (std::size_t k = 0; k < K; ++k) {
                const std::size_t i = rng.uniform_index(problem.sample_count());
                const Vector g = problem.sample_gradient(i, theta);
                numkit::axpy(-alpha, g, theta);
                sum += theta;  // θ̄_K averages θ_1..θ_K
            }
            sum *= 1.0 / static_cast<double>(K);
            per_seed[static_cast<std::size_t>(s)] = problem.value(sum) - inf_f;
        }
        double gap = 0.0;
        for (double v : per_seed) gap += v;
        gap /= static_cast<double>(seeds);
        gaps.push_back(gap);

        const double bound =
            d0 / (alpha * static_cast<double>(K)) + 2.0 * alpha * problem.sigma_sq();
        report.curve.push_back(CurvePoint{static_cast<double>(K), gap, bound});
        report.assertions.push_back(Assertion{"gap_under_bound K=" + std::to_string(K), bound, gap,
                                              1.1, gap <= 1.1 * bound});
    }

    // least-squares slope of log gap vs log K (needs at least two horizons)
    if (K_list.size() >= 2) {
        double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
        const double n = static_cast<double>(K_list.size());
        for (std::size_t i = 0; i < K_list.size(); ++i) {
            const double x = std::log10(static_cast<double>(K_list[i]));
            const double y = std::log10(gaps[i]);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        report.assertions.push_back(
            Assertion{"loglog_slope_in_band", -0.5, slope, 0.15, slope >= -0.65 && slope <= -0.35});
    }
    return report;
}

SmoothnessEstimate estimate_smoothness(const FiniteSumObjective& obj, const Vector& theta0,
                                       std::size_t probe_points, std::uint64_t seed) {
    RngStream rng(seed);
    SmoothnessEstimate est;

    auto power_norm = [&](const std::function<Vector(const Vector&)>& grad,
                          const Vector& at) -> double {
        Vector v(at.size());
        for (std::size_t c = 0; c < v.size(); ++c) v[c] = rng.normal(0.0, 1.0);
        double lambda = 0.0;
        const double at_norm = numkit::norm2(at);
        for (int it = 0; it < 20; ++it) {
            const double vn = numkit::norm2(v);
            if (vn == 0.0) return 0.0;
            v *= 1.0 / vn;
            const double eps = 1e-6 * (1.0 + at_norm);
            Vector tp = at, tm = at;
            numkit::axpy(eps, v, tp);
            numkit::axpy(-eps, v, tm);
            Vector hv = grad(tp);
            hv -= grad(tm);
            hv *= 1.0 / (2.0 * eps);
            lambda = numkit::norm2(hv);
            v = std::move(hv);
        }
        return lambda;
    };

    for (std::size_t p = 0; p < probe_points; ++p) {
        Vector at = theta0;
        if (p > 0)
            for (std::size_t c = 0; c < at.size(); ++c) at[c] += rng.uniform(-0.3, 0.3);
        est.l_f = std::max(est.l_f,
                           power_norm([&](const Vector& t) { return obj.gradient(t); }, at));
        // a few per-sample curvatures
        for (int rep = 0; rep < 3; ++rep) {
            const std::size_t i = rng.uniform_index(obj.sample_count());
            est.l_max = std::max(
                est.l_max,
                power_norm([&, i](const Vector& t) { return obj.sample_gradient(i, t); }, at));
        }
    }
    est.l_max = std::max(est.l_max, est.l_f);
    est.stable = std::isfinite(est.l_f) && est.l_f > 0.0 && std::isfinite(est.l_max);
    return est;
}

VerifyReport verify_nonconvex_stationarity(const FiniteSumObjective& obj, const Vector& theta0,
                                           std::size_t K, std::size_t seeds) {
    VerifyReport report;
    report.theorem = "sgd_nonconvex_stationarity";
    report.curve_label = "K";

    const SmoothnessEstimate est = estimate_smoothness(obj, theta0, 4, 99);
    if (!est.stable) {
        report.inconclusive = true;
        return report;
    }
    const double f0 = obj.value(theta0);

    auto min_mean_grad_sq = [&](std::size_t horizon) {
        const double alpha =
            std::sqrt(2.0 / (est.l_f * est.l_max * static_cast<double>(horizon)));
        const auto mean =
            seed_mean_sgd(obj, theta0, alpha, horizon, seeds, [&](const Vector& t, std::size_t) {
                const Vector g = obj.gradient(t);
                return numkit::dot(g, g);
            });
        double lowest = mean[0];
        for (double v : mean) lowest = std::min(lowest, v);
        return lowest;
    };

    const double min_k = min_mean_grad_sq(K);
    const double min_4k = min_mean_grad_sq(4 * K);

    // inf f and Δ taken as 0 for a nonnegative least-squares objective,
    // which only enlarges the bound numerator 2(f0 − inf f) + Δ.
    const double bound =
        std::sqrt(2.0 * est.l_f * est.l_max) * (2.0 * f0) / std::sqrt(static_cast<double>(K));
    report.assertions.push_back(
        Assertion{"min_grad_sq_under_bound", bound, min_k, 1.0, min_k <= bound});
    const double ratio = min_4k / min_k;
    report.assertions.push_back(
        Assertion{"quadrupling_K_halves_min_grad_sq (ratio)", 0.5, ratio, 0.2,
                  ratio >= 0.35 && ratio <= 0.7});
    report.curve.push_back(CurvePoint{static_cast<double>(K), min_k, bound});
    report.curve.push_back(CurvePoint{static_cast<double>(4 * K), min_4k,
                                      bound / 2.0});
    return report;
}

}  // namespace optlab::harness
