#include "doctest.h"

#include <cmath>
#include <map>

#include "optlab/problems/surrogate.hpp"
#include "optlab/sampleweight/batching.hpp"
#include "optlab/sampleweight/bilevel.hpp"
#include "optlab/sampleweight/density.hpp"
#include "optlab/sampleweight/study.hpp"
#include "optlab/sampleweight/weights.hpp"
#include "oracles.hpp"

using namespace optlab;
using numkit::Matrix;
using numkit::RngStream;
using numkit::Vector;
using problems::PoissonSurrogate;

TEST_CASE("constant indicator yields the uniform density") {
    auto base = sampleweight::uniform_density_1d(32);
    const auto density =
        sampleweight::update_density(base.candidate_pool, Vector(32, 3.7), 2.0, 1);
    for (std::size_t j = 0; j < 32; ++j)
        CHECK(density.probabilities[j] == doctest::Approx(1.0 / 32.0).epsilon(1e-12));
}

TEST_CASE("beta near zero flattens any indicator") {
    auto base = sampleweight::uniform_density_1d(16);
    Vector eta(16);
    for (std::size_t j = 0; j < 16; ++j) eta[j] = 0.1 + static_cast<double>(j);
    const auto density = sampleweight::update_density(base.candidate_pool, eta, 1e-9, 0);
    for (std::size_t j = 0; j < 16; ++j)
        CHECK(density.probabilities[j] == doctest::Approx(1.0 / 16.0).epsilon(1e-6));
}

TEST_CASE("squared-residual density matches naive normalization") {
    auto base = sampleweight::uniform_density_1d(64);
    Vector eta(64);
    for (std::size_t j = 0; j < 64; ++j)
        eta[j] = std::abs(PoissonSurrogate::residual(base.candidate_pool[j][0], Vector{0.0, 0.0}));
    const auto density = sampleweight::update_density(base.candidate_pool, eta, 2.0, 1);
    double total = 0.0;
    for (std::size_t j = 0; j < 64; ++j) total += eta[j] * eta[j];
    for (std::size_t j = 0; j < 64; ++j)
        REQUIRE(density.probabilities[j] == doctest::Approx(eta[j] * eta[j] / total).epsilon(1e-12));
}

TEST_CASE("all-zero indicator is rejected") {
    auto base = sampleweight::uniform_density_1d(8);
    CHECK_THROWS(sampleweight::update_density(base.candidate_pool, Vector(8), 1.0, 0));
}

TEST_CASE("importance risk with a uniform pool recovers pool scaling") {
    const auto density = sampleweight::uniform_density_1d(10);
    std::vector<std::size_t> drawn{0, 3, 7};
    auto residual = [](const Vector& x, const Vector&) { return x[0]; };
    auto residual_grad = [](const Vector&, const Vector&) { return Vector{0.0}; };
    sampleweight::ImportanceWeightedRisk risk(density, drawn, residual, residual_grad, 1);
    // every weight is 1/p = 10
    double expected = 0.0;
    for (std::size_t j : drawn) {
        const double r = density.candidate_pool[j][0];
        expected += 10.0 * r * r;
    }
    expected /= 3.0;
    CHECK(risk.value(Vector{0.0}) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("single-point pool estimator is that point's weighted residual") {
    sampleweight::SamplingDensity density;
    density.candidate_pool.push_back(Vector{0.4});
    density.probabilities = Vector{1.0};
    auto residual = [](const Vector& x, const Vector& t) { return t[0] * x[0]; };
    auto residual_grad = [](const Vector& x, const Vector&) { return Vector{x[0]}; };
    sampleweight::ImportanceWeightedRisk risk(density, {0}, residual, residual_grad, 1);
    const Vector theta{2.0};
    CHECK(risk.value(theta) == doctest::Approx(0.8 * 0.8).epsilon(1e-14));
}

TEST_CASE("importance risk is exhaustively unbiased on small pools") {
    // expectation over all single-draw outcomes equals the full-pool
    // uniform-density estimator, enumerated exactly
    for (std::size_t pool_size : {std::size_t{3}, std::size_t{5}, std::size_t{6}}) {
        auto base = sampleweight::uniform_density_1d(pool_size, 0.1, 0.9);
        Vector eta(pool_size);
        const Vector theta{1.3, -0.4};
        for (std::size_t j = 0; j < pool_size; ++j)
            eta[j] = 0.3 + std::abs(PoissonSurrogate::residual(base.candidate_pool[j][0], theta));
        const auto density = sampleweight::update_density(base.candidate_pool, eta, 1.5, 0);

        auto residual = [](const Vector& x, const Vector& t) {
            return PoissonSurrogate::residual(x[0], t);
        };
        auto residual_grad = [](const Vector& x, const Vector&) {
            return PoissonSurrogate::residual_jacobian_row(x[0]);
        };

        double expectation = 0.0;
        for (std::size_t j = 0; j < pool_size; ++j) {
            sampleweight::ImportanceWeightedRisk single(density, {j}, residual, residual_grad, 2);
            expectation += density.probabilities[j] * single.value(theta);
        }

        // full-pool uniform reference: draw every point once under uniform p
        std::vector<std::size_t> all(pool_size);
        for (std::size_t j = 0; j < pool_size; ++j) all[j] = j;
        sampleweight::ImportanceWeightedRisk uniform_full(
            sampleweight::uniform_density_1d(pool_size, 0.1, 0.9), all, residual, residual_grad,
            2);
        CHECK(expectation == doctest::Approx(uniform_full.value(theta)).epsilon(1e-12));
    }
}

TEST_CASE("zero-probability drawn point is rejected") {
    sampleweight::SamplingDensity density;
    density.candidate_pool = {Vector{0.1}, Vector{0.9}};
    density.probabilities = Vector{1.0, 0.0};
    auto residual = [](const Vector&, const Vector&) { return 0.0; };
    auto grad = [](const Vector&, const Vector&) { return Vector{0.0}; };
    CHECK_THROWS(sampleweight::ImportanceWeightedRisk(density, {1}, residual, grad, 1));
}

TEST_CASE("residual point weights") {
    // equal residuals give uniform weights
    const Vector equal = sampleweight::residual_point_weights(Vector{0.5, 0.5, 0.5}, 2.0);
    for (std::size_t j = 0; j < 3; ++j) CHECK(equal[j] == doctest::Approx(1.0));

    // β=2 with residuals (1,0) puts all mass on the first point
    const Vector pair = sampleweight::residual_point_weights(Vector{1.0, 0.0}, 2.0);
    CHECK(pair[0] == doctest::Approx(2.0));
    CHECK(pair[1] == doctest::Approx(0.0));

    // normalization Σξ = m and mean(ξ) = 1 on random residuals
    RngStream rng(4);
    Vector r(37);
    for (std::size_t j = 0; j < 37; ++j) r[j] = rng.normal(0.0, 2.0);
    const Vector xi = sampleweight::residual_point_weights(r, 1.7);
    double sum = 0.0;
    for (std::size_t j = 0; j < 37; ++j) {
        REQUIRE(xi[j] >= 0.0);
        sum += xi[j];
    }
    CHECK(sum == doctest::Approx(37.0).epsilon(1e-12));

    // all-zero residuals fall back to uniform
    const Vector zero = sampleweight::residual_point_weights(Vector(5), 1.0);
    for (std::size_t j = 0; j < 5; ++j) CHECK(zero[j] == doctest::Approx(1.0));
}

namespace {

sampleweight::LossTerm quadratic_term(double curvature, double shift) {
    sampleweight::LossTerm term;
    term.value = [curvature, shift](const Vector& t) {
        double acc = 0.0;
        for (std::size_t i = 0; i < t.size(); ++i)
            acc += 0.5 * curvature * (t[i] - shift) * (t[i] - shift);
        return acc + 0.1;  // keep losses positive
    };
    term.gradient = [curvature, shift](const Vector& t) {
        Vector g(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) g[i] = curvature * (t[i] - shift);
        return g;
    };
    return term;
}

}  // namespace

TEST_CASE("gradnorm with a single loss renormalizes to one") {
    const std::vector<sampleweight::LossTerm> losses{quadratic_term(2.0, 0.0)};
    const Vector gamma =
        sampleweight::gradnorm_update(losses, Vector{1.0, 1.0}, Vector{3.0}, Vector{0.1}, 1.5, 0.1);
    CHECK(gamma[0] == doctest::Approx(1.0));
}

TEST_CASE("gradnorm is a fixed point for identical losses") {
    const std::vector<sampleweight::LossTerm> losses{quadratic_term(2.0, 0.5),
                                                     quadratic_term(2.0, 0.5)};
    const Vector gamma = sampleweight::gradnorm_update(losses, Vector{1.0, -2.0},
                                                       Vector{1.0, 1.0}, Vector{0.3, 0.3}, 1.0,
                                                       0.05);
    CHECK(gamma[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(gamma[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("gradnorm matches a hand-rolled reference update") {
    const std::vector<sampleweight::LossTerm> losses{quadratic_term(2.0, 0.0),
                                                     quadratic_term(0.5, 1.0)};
    const Vector theta{0.7, -0.3};
    const Vector gamma{1.2, 0.8};
    const Vector init{0.4, 0.9};
    const double zeta = 1.5, step = 0.05;

    const Vector got = sampleweight::gradnorm_update(losses, theta, gamma, init, zeta, step);

    // reference, spelled out
    const double gn0 = numkit::norm2(losses[0].gradient(theta));
    const double gn1 = numkit::norm2(losses[1].gradient(theta));
    const double G0 = gamma[0] * gn0, G1 = gamma[1] * gn1;
    const double Gbar = 0.5 * (G0 + G1);
    const double speed0 = losses[0].value(theta) / init[0];
    const double speed1 = losses[1].value(theta) / init[1];
    const double smean = 0.5 * (speed0 + speed1);
    const double t0 = Gbar * std::pow(speed0 / smean, zeta);
    const double t1 = Gbar * std::pow(speed1 / smean, zeta);
    double n0 = gamma[0] - step * ((G0 - t0) > 0 ? 1.0 : ((G0 - t0) < 0 ? -1.0 : 0.0)) * gn0;
    double n1 = gamma[1] - step * ((G1 - t1) > 0 ? 1.0 : ((G1 - t1) < 0 ? -1.0 : 0.0)) * gn1;
    const double total = n0 + n1;
    n0 *= 2.0 / total;
    n1 *= 2.0 / total;

    CHECK(got[0] == doctest::Approx(n0).epsilon(1e-12));
    CHECK(got[1] == doctest::Approx(n1).epsilon(1e-12));
}

TEST_CASE("stratified batch compositions") {
    RngStream rng(5);
    const std::vector<std::size_t> groups{40, 30, 20, 10};

    // everything from the first group
    auto batch = sampleweight::stratified_batch(groups, {1.0, 0.0, 0.0, 0.0}, 12, rng);
    REQUIRE(batch.size() == 12);
    for (std::size_t idx : batch) REQUIRE(idx < 40);

    // proportional fractions with the full size return every index
    auto all = sampleweight::stratified_batch(groups, {0.4, 0.3, 0.2, 0.1}, 100, rng);
    std::sort(all.begin(), all.end());
    REQUIRE(all.size() == 100);
    for (std::size_t i = 0; i < 100; ++i) REQUIRE(all[i] == i);

    // largest-remainder arithmetic: size 10 at (0.5, 0.3, 0.2, 0) → (5,3,2,0)
    auto comp = sampleweight::stratified_batch(groups, {0.5, 0.3, 0.2, 0.0}, 10, rng);
    std::map<int, int> counts;
    for (std::size_t idx : comp) {
        if (idx < 40) ++counts[0];
        else if (idx < 70) ++counts[1];
        else if (idx < 90) ++counts[2];
        else ++counts[3];
    }
    CHECK(counts[0] == 5);
    CHECK(counts[1] == 3);
    CHECK(counts[2] == 2);
    CHECK(counts[3] == 0);

    // no replacement within groups
    std::sort(comp.begin(), comp.end());
    CHECK(std::adjacent_find(comp.begin(), comp.end()) == comp.end());

    // over-requesting a group population fails
    CHECK_THROWS(sampleweight::stratified_batch({2, 2}, {1.0, 0.0}, 3, rng));
}

TEST_CASE("spatially diverse batch caps per-cell counts") {
    RngStream rng(6);
    std::vector<double> pool;
    for (int i = 0; i < 64; ++i) pool.push_back(static_cast<double>(i) / 64.0);

    // one cell degenerates to a plain draw
    auto plain = sampleweight::spatial_diverse_batch(pool, 8, 1, rng);
    CHECK(plain.size() == 8);

    // cells == size with every cell populated gives one point per cell
    auto spread = sampleweight::spatial_diverse_batch(pool, 8, 8, rng);
    std::vector<int> cell_counts(8, 0);
    const double space = 63.0 / 64.0;
    for (std::size_t idx : spread)
        ++cell_counts[std::min<std::size_t>(static_cast<std::size_t>(pool[idx] / space * 8.0), 7)];
    for (int c : cell_counts) REQUIRE(c == 1);

    // 4 cells, size 8 → at most 2 per cell
    auto byfour = sampleweight::spatial_diverse_batch(pool, 8, 4, rng);
    std::vector<int> four(4, 0);
    const double lo = 0.0, span = 63.0 / 64.0;
    for (std::size_t idx : byfour) {
        auto c = static_cast<std::size_t>((pool[idx] - lo) / span * 4.0);
        ++four[std::min<std::size_t>(c, 3)];
    }
    for (int c : four) REQUIRE(c <= 2);

    CHECK_THROWS(sampleweight::spatial_diverse_batch(pool, 65, 4, rng));
}

TEST_CASE("bilevel hypergradient vanishes when the outer loss ignores theta") {
    const std::vector<sampleweight::LossTerm> inner{quadratic_term(2.0, 0.0),
                                                    quadratic_term(1.0, 0.0)};
    sampleweight::LossTerm outer;
    outer.value = [](const Vector&) { return 5.0; };
    outer.gradient = [](const Vector& t) { return Vector(t.size()); };
    const auto res =
        sampleweight::bilevel_hypergradient(inner, outer, Vector{0.0, 0.0}, Vector{1.0, 1.0});
    CHECK(res.stationary);
    CHECK(std::abs(res.hypergradient[0]) <= 1e-12);
    CHECK(std::abs(res.hypergradient[1]) <= 1e-12);
}

TEST_CASE("bilevel hypergradient matches closed-form implicit differentiation") {
    // inner: γ₁·½a(θ−p)² + γ₂·½b(θ−q)², optimum θ*(γ) = (γ₁ap+γ₂bq)/(γ₁a+γ₂b)
    // outer: C(θ) = cθ → ∂C/∂γ_j by the quotient rule
    const double a = 2.0, b = 0.5, p = 1.0, q = -1.0, c = 3.0;
    std::vector<sampleweight::LossTerm> inner(2);
    inner[0].value = [=](const Vector& t) { return 0.5 * a * (t[0] - p) * (t[0] - p); };
    inner[0].gradient = [=](const Vector& t) { return Vector{a * (t[0] - p)}; };
    inner[1].value = [=](const Vector& t) { return 0.5 * b * (t[0] - q) * (t[0] - q); };
    inner[1].gradient = [=](const Vector& t) { return Vector{b * (t[0] - q)}; };
    sampleweight::LossTerm outer;
    outer.value = [=](const Vector& t) { return c * t[0]; };
    outer.gradient = [=](const Vector&) { return Vector{c}; };

    const Vector gamma{1.3, 0.7};
    const double denom = gamma[0] * a + gamma[1] * b;
    const Vector theta_star{(gamma[0] * a * p + gamma[1] * b * q) / denom};

    const auto res = sampleweight::bilevel_hypergradient(inner, outer, theta_star, gamma);
    REQUIRE(res.stationary);

    // closed form: dθ*/dγ₁ = a(p−θ*)/denom, dθ*/dγ₂ = b(q−θ*)/denom
    const double d1 = c * a * (p - theta_star[0]) / denom;
    const double d2 = c * b * (q - theta_star[0]) / denom;
    CHECK(res.hypergradient[0] == doctest::Approx(d1).epsilon(1e-8));
    CHECK(res.hypergradient[1] == doctest::Approx(d2).epsilon(1e-8));
}

TEST_CASE("bilevel hypergradient matches finite differences of the re-solved outer") {
    // two-term inner problem in R²; the inner optimum solves a 2x2 linear
    // system per γ, so re-solving under perturbed γ gives the outer
    // derivative by central differences
    const Vector pa{1.0, 0.0}, pb{-0.5, 2.0};
    std::vector<sampleweight::LossTerm> inner(2);
    inner[0].value = [=](const Vector& t) {
        return 0.5 * ((t[0] - pa[0]) * (t[0] - pa[0]) * 3.0 + (t[1] - pa[1]) * (t[1] - pa[1]));
    };
    inner[0].gradient = [=](const Vector& t) {
        return Vector{3.0 * (t[0] - pa[0]), (t[1] - pa[1])};
    };
    inner[1].value = [=](const Vector& t) {
        return 0.5 * ((t[0] - pb[0]) * (t[0] - pb[0]) + 2.0 * (t[1] - pb[1]) * (t[1] - pb[1]));
    };
    inner[1].gradient = [=](const Vector& t) {
        return Vector{(t[0] - pb[0]), 2.0 * (t[1] - pb[1])};
    };
    sampleweight::LossTerm outer;
    outer.value = [](const Vector& t) { return t[0] * t[0] + 0.5 * t[1]; };
    outer.gradient = [](const Vector& t) { return Vector{2.0 * t[0], 0.5}; };

    auto solve_inner = [&](const Vector& gamma) {
        // diagonal quadratics: coordinate-wise weighted averages
        const double d0 = gamma[0] * 3.0 + gamma[1] * 1.0;
        const double d1 = gamma[0] * 1.0 + gamma[1] * 2.0;
        return Vector{(gamma[0] * 3.0 * pa[0] + gamma[1] * 1.0 * pb[0]) / d0,
                      (gamma[0] * 1.0 * pa[1] + gamma[1] * 2.0 * pb[1]) / d1};
    };

    const Vector gamma{1.1, 0.9};
    const auto res =
        sampleweight::bilevel_hypergradient(inner, outer, solve_inner(gamma), gamma);
    REQUIRE(res.stationary);

    const double h = 1e-5;
    for (std::size_t j = 0; j < 2; ++j) {
        Vector gp = gamma, gm = gamma;
        gp[j] += h;
        gm[j] -= h;
        const double fd = (outer.value(solve_inner(gp)) - outer.value(solve_inner(gm))) / (2.0 * h);
        CHECK(res.hypergradient[j] == doctest::Approx(fd).epsilon(1e-4));
    }
}

TEST_CASE("weyl check equality and rank-one cases") {
    // zero update leaves the rescaled spectrum exactly
    Matrix theta(3, 3);
    theta(0, 0) = 2.0;
    theta(1, 1) = 1.0;
    theta(2, 2) = 0.5;
    const auto eq = sampleweight::weyl_check(theta, Vector(3), 5);
    CHECK(eq.holds);
    CHECK(eq.worst_margin <= 1e-12);

    // zero kernel becomes rank one with λmax = ‖J‖²/(m+1)
    const Vector j{1.0, 2.0, -2.0};
    const auto rank1 = sampleweight::weyl_check(Matrix(3, 3), j, 4);
    CHECK(rank1.holds);
    const auto eig = numkit::sym_eigen(rank1.theta_next);
    CHECK(eig.eigenvalues[0] == doctest::Approx(numkit::dot(j, j) / 5.0).epsilon(1e-12));
}

TEST_CASE("weyl monotonicity holds over 1000 random trials") {
    RngStream rng(99);
    int violations = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 2 + rng.uniform_index(4);
        const Matrix psd = oracles::random_spd(n, rng, 0.1);
        Vector j(n);
        for (std::size_t i = 0; i < n; ++i) j[i] = rng.normal(0.0, 1.0);
        const auto res = sampleweight::weyl_check(psd, j, 3 + rng.uniform_index(20));
        if (!res.holds) ++violations;
    }
    CHECK(violations == 0);
}

TEST_CASE("adaptive resampling concentrates points where residuals are large") {
    sampleweight::ResamplingConfig config;
    config.pool_points = 256;
    config.draw_count = 64;
    config.beta = 2.0;
    RngStream rng(8);
    // residual field peaked near x = 0.9 (the surrogate at θ = 0)
    const auto res = sampleweight::resample_interior(
        [](double x) { return std::abs(PoissonSurrogate::residual(x, Vector{0.0, 0.0})); },
        config, 1, rng);
    REQUIRE(res.points.size() == 64);
    double sum = 0.0;
    std::size_t near_peak = 0;
    for (std::size_t i = 0; i < res.points.size(); ++i) {
        sum += res.weights[i];
        if (std::abs(res.points[i][0] - 0.9) < 0.15) ++near_peak;
    }
    CHECK(sum == doctest::Approx(64.0).epsilon(1e-12));
    CHECK(near_peak > 48);  // β=2 concentrates draws sharply at the bump
    CHECK(res.density.stage == 1);
}

TEST_CASE("poisson sampling study orderings") {
    const auto study = sampleweight::poisson_sampling_study();
    CHECK(study.lambda_min_increases);
    CHECK(study.kappa_decreases);
    CHECK(study.lambda_max_rel_change < 0.10);

    // the 2x2 closed form agrees with the jacobi route
    const auto eig5 = numkit::sym_eigen(study.theta5);
    CHECK(study.lambda_max_5 == doctest::Approx(eig5.eigenvalues[0]).epsilon(1e-12));
    CHECK(study.lambda_min_5 == doctest::Approx(eig5.eigenvalues[1]).epsilon(1e-12));

    // condition number of the refined kernel matches the closed-form ratio
    const auto eig7 = numkit::sym_eigen(study.theta7);
    CHECK(study.kappa_7 == doctest::Approx(eig7.eigenvalues[0] / eig7.eigenvalues[1]).epsilon(1e-10));

    // the general condition_number path agrees with the 2x2 closed form
    CHECK(numkit::condition_number(numkit::sym_eigen(study.theta5)) ==
          doctest::Approx(study.kappa_5).epsilon(1e-12));
}
