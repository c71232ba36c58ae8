#include "optlab/harness/reproduce.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "optlab/firstorder/optimizers.hpp"
#include "optlab/hybrid/switch.hpp"
#include "optlab/kerneldx/modes.hpp"
#include "optlab/kerneldx/ntk.hpp"
#include "optlab/problems/fixtures.hpp"
#include "optlab/sampleweight/density.hpp"
#include "optlab/sampleweight/study.hpp"
#include "optlab/sampleweight/weights.hpp"
#include "optlab/secondorder/lbfgs.hpp"
#include "optlab/secondorder/newton.hpp"

namespace optlab::harness {

using firstorder::BatchSchedule;
using firstorder::MethodConfig;
using firstorder::OptState;
using firstorder::StepSchedule;
using firstorder::StopRule;
using firstorder::TraceCsvOptions;
using firstorder::TraceRecord;

namespace {

class WallTimer {
public:
    WallTimer() : start_(std::chrono::steady_clock::now()) {}
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

TraceCsvOptions deterministic_csv() {
    TraceCsvOptions opts;
    opts.deterministic_wall = true;
    return opts;
}

double tail_mean_f(const std::vector<TraceRecord>& trace) {
    // mean objective over the last tenth of the records
    const std::size_t n = trace.size();
    const std::size_t from = n - std::max<std::size_t>(n / 10, 1);
    double acc = 0.0;
    for (std::size_t i = from; i < n; ++i) acc += trace[i].f;
    return acc / static_cast<double>(n - from);
}

}  // namespace

Example1Result reproduce_example1(const std::string& out_dir, std::uint64_t seed,
                                  const ReproduceDefaults& cfg) {
    ensure_directory(out_dir);
    WallTimer timer;
    Manifest manifest("reproduce example 1", seed);
    manifest.config() = {{"alpha", cfg.ex1_alpha},
                         {"iterations", cfg.ex1_iters},
                         {"log_every", cfg.ex1_log_every},
                         {"network", "1-64-64-1 tanh"},
                         {"grid_points", 256}};

    const auto fx = problems::spectral_bias_fixture(seed);
    const auto obj = fx.objective();
    OptState state(fx.theta0);

    Example1Result result;
    std::vector<TraceRecord> trace;
    std::ofstream bands_csv(out_dir + "/band_errors.csv");
    bands_csv.precision(17);
    bands_csv << "k,low,mid,high\n";

    const std::vector<std::size_t> checkpoints{100, 1500, cfg.ex1_iters};
    for (std::size_t k = 0; k <= cfg.ex1_iters; ++k) {
        const bool milestone =
            std::find(checkpoints.begin(), checkpoints.end(), k) != checkpoints.end();
        if (k % cfg.ex1_log_every == 0 || milestone) {
            const auto bands = kerneldx::spectral_bias_report(fx, {state.theta})[0];
            bands_csv << k << "," << bands[0] << "," << bands[1] << "," << bands[2] << "\n";
            if (milestone) result.band_errors[k] = bands;
            TraceRecord rec;
            rec.k = k;
            rec.epoch = static_cast<double>(k);
            rec.f = obj->value(state.theta);
            rec.grad_norm = numkit::norm2(obj->gradient(state.theta));
            rec.step_size = cfg.ex1_alpha;
            rec.batch_size = obj->sample_count();
            trace.push_back(rec);
        }
        if (k < cfg.ex1_iters) firstorder::gd_step(*obj, state, cfg.ex1_alpha);
    }
    result.final_loss = obj->value(state.theta);

    firstorder::save_trace_csv(trace, out_dir + "/trace.csv", deterministic_csv());
    manifest.results() = {{"final_loss", result.final_loss}};
    manifest.add_timing("total", timer.ms());
    manifest.save(out_dir + "/manifest.json");
    return result;
}

Example2Result reproduce_example2(const std::string& out_dir, std::uint64_t seed,
                                  const ReproduceDefaults& cfg) {
    ensure_directory(out_dir);
    WallTimer timer;
    Manifest manifest("reproduce example 2", seed);
    manifest.config() = {{"alpha_gd", cfg.ex2_alpha_gd},      {"alpha_adam", cfg.ex2_alpha_adam},
                         {"gn_beta", cfg.ex2_gn_beta},        {"iterations", cfg.ex2_iters},
                         {"log_every", cfg.ex2_log_every},    {"network", "2-24-24-1 tanh"},
                         {"target", "sin(pi x1)+cos(pi x2)"}, {"samples", 64}};

    const auto fx = problems::regression_2d_fixture(seed);
    const auto obj = fx.objective();

    OptState gd(fx.theta0), adam(fx.theta0);
    Vector theta_gn = fx.theta0;

    Example2Result result;
    std::ofstream kappa_csv(out_dir + "/kappa.csv");
    kappa_csv.precision(17);
    kappa_csv << "k,kappa_gd,kappa_adam,kappa_gn\n";
    std::vector<TraceRecord> trace_gd, trace_adam, trace_gn;

    for (std::size_t k = 0; k <= cfg.ex2_iters; ++k) {
        if (k % cfg.ex2_log_every == 0 || k == cfg.ex2_iters) {
            const auto rep_gd = kerneldx::empirical_ntk(*obj, gd.theta);
            const auto diag = kerneldx::adam_diag_preconditioner(adam, 1e-8);
            const auto rep_adam = kerneldx::preconditioned_ntk(
                *obj, adam.theta, kerneldx::diagonal_matrix(diag),
                kerneldx::PreconditionerTag::AdamDiag);
            const auto M = kerneldx::gauss_newton_preconditioner(*obj, theta_gn, cfg.ex2_gn_beta);
            const auto rep_gn =
                kerneldx::preconditioned_ntk(*obj, theta_gn, M,
                                             kerneldx::PreconditionerTag::GaussNewton,
                                             cfg.ex2_gn_beta);
            kappa_csv << k << "," << rep_gd.kappa << "," << rep_adam.kappa << "," << rep_gn.kappa
                      << "\n";
            result.kappa_gd = rep_gd.kappa;
            result.kappa_adam = rep_adam.kappa;
            result.kappa_gn = rep_gn.kappa;
            result.comparison_iteration = k;
            result.kappa_log[k] = {rep_gd.kappa, rep_adam.kappa, rep_gn.kappa};
            if (k == cfg.ex2_iters) {
                kerneldx::save_spectrum_csv(rep_gd, out_dir + "/spectrum_gd.csv");
                kerneldx::save_spectrum_csv(rep_adam, out_dir + "/spectrum_adam.csv");
                kerneldx::save_spectrum_csv(rep_gn, out_dir + "/spectrum_gn.csv");
            }

            auto record = [&](std::vector<TraceRecord>& tr, const Vector& theta, double alpha) {
                TraceRecord rec;
                rec.k = k;
                rec.epoch = static_cast<double>(k);
                rec.f = obj->value(theta);
                rec.grad_norm = numkit::norm2(obj->gradient(theta));
                rec.step_size = alpha;
                rec.batch_size = obj->sample_count();
                tr.push_back(rec);
            };
            record(trace_gd, gd.theta, cfg.ex2_alpha_gd);
            record(trace_adam, adam.theta, cfg.ex2_alpha_adam);
            record(trace_gn, theta_gn, 1.0);
        }
        if (k == cfg.ex2_iters) break;
        firstorder::gd_step(*obj, gd, cfg.ex2_alpha_gd);
        firstorder::adam_step(*obj, adam, cfg.ex2_alpha_adam, 0.9, 0.999, 1e-8);
        theta_gn = secondorder::gauss_newton_step(*obj, theta_gn, cfg.ex2_gn_beta).theta_next;
    }
    result.final_gd = obj->value(gd.theta);
    result.final_adam = obj->value(adam.theta);
    result.final_gn = obj->value(theta_gn);

    firstorder::save_trace_csv(trace_gd, out_dir + "/trace_gd.csv", deterministic_csv());
    firstorder::save_trace_csv(trace_adam, out_dir + "/trace_adam.csv", deterministic_csv());
    firstorder::save_trace_csv(trace_gn, out_dir + "/trace_gn.csv", deterministic_csv());
    manifest.results() = {{"final_gd", result.final_gd},
                          {"final_adam", result.final_adam},
                          {"final_gn", result.final_gn},
                          {"kappa_gd", result.kappa_gd},
                          {"kappa_adam", result.kappa_adam},
                          {"kappa_gn", result.kappa_gn},
                          {"comparison_iteration", result.comparison_iteration}};
    manifest.add_timing("total", timer.ms());
    manifest.save(out_dir + "/manifest.json");
    return result;
}

Example3Result reproduce_example3(const std::string& out_dir, std::uint64_t seed,
                                  const ReproduceDefaults& cfg) {
    ensure_directory(out_dir);
    WallTimer timer;
    Manifest manifest("reproduce example 3", seed);
    manifest.config() = {{"alpha0", cfg.ex3_alpha},
                         {"tau", cfg.ex3_lrs_tau},
                         {"pw", cfg.ex3_lrs_power},
                         {"batch_sizes", {4, 16, 1024}},
                         {"batch_path", {cfg.ex3_batch_small, cfg.ex3_batch_large}},
                         {"iterations", cfg.ex3_iters},
                         {"dataset", "two_gaussians m=6000"}};

    const auto data = problems::two_gaussians_dataset(6000, seed);
    const auto obj = problems::logistic_objective(data);
    const Vector theta0(obj->dim());

    // reference optimum for suboptimality
    secondorder::LbfgsOptions ref_opts;
    ref_opts.memory = 20;
    ref_opts.max_iter = 500;
    ref_opts.grad_tol = 1e-12;
    const auto ref = secondorder::lbfgs_run(*obj, theta0, ref_opts);
    Example3Result result;
    result.f_star = obj->value(ref.final_theta);

    const StopRule stop{cfg.ex3_iters, 0.0};
    MethodConfig minibatch;
    minibatch.kind = MethodConfig::Kind::MiniBatch;

    for (std::size_t b : {std::size_t{4}, std::size_t{16}, std::size_t{1024}}) {
        OptState state(theta0, numkit::RngStream(seed + b));
        auto run = firstorder::run(*obj, std::move(state), minibatch,
                                   StepSchedule::constant(cfg.ex3_alpha),
                                   BatchSchedule::fixed(b), stop, cfg.ex3_record_every);
        result.final_suboptimality[b] = tail_mean_f(run.trace) - result.f_star;
        firstorder::save_trace_csv(run.trace, out_dir + "/trace_b" + std::to_string(b) + ".csv",
                                   deterministic_csv());
        if (b == cfg.ex3_batch_small) result.fixed_final = tail_mean_f(run.trace);
    }

    {
        // τ is an epoch rate: one epoch of the small batch is m/b iterations
        const double tau_per_iter = cfg.ex3_lrs_tau * static_cast<double>(cfg.ex3_batch_small) /
                                    static_cast<double>(obj->sample_count());
        OptState state(theta0, numkit::RngStream(seed + 101));
        auto run = firstorder::run(
            *obj, std::move(state), minibatch,
            StepSchedule::polynomial_decay(cfg.ex3_alpha, tau_per_iter, cfg.ex3_lrs_power),
            BatchSchedule::fixed(cfg.ex3_batch_small), stop, cfg.ex3_record_every);
        result.lrs_final = tail_mean_f(run.trace);
        firstorder::save_trace_csv(run.trace, out_dir + "/trace_lrs.csv", deterministic_csv());
    }
    {
        OptState state(theta0, numkit::RngStream(seed + 102));
        auto run = firstorder::run(
            *obj, std::move(state), minibatch, StepSchedule::constant(cfg.ex3_alpha),
            BatchSchedule::linear_growth(cfg.ex3_batch_small, cfg.ex3_batch_large, cfg.ex3_iters),
            stop, cfg.ex3_record_every);
        result.pbs_final = tail_mean_f(run.trace);
        firstorder::save_trace_csv(run.trace, out_dir + "/trace_pbs.csv", deterministic_csv());
    }

    // relative variance of the mini-batch gradient estimator vs batch size
    {
        std::ofstream var_csv(out_dir + "/variance.csv");
        var_csv.precision(17);
        var_csv << "batch_size,relative_variance\n";
        Vector probe(theta0.size());
        probe[0] = 0.3;  // away from the optimum so the gradient is nonzero
        const Vector full = obj->gradient(probe);
        const double full_sq = numkit::dot(full, full);
        numkit::RngStream rng(seed + 7);
        const int draws = 200;
        double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
        int count = 0;
        for (std::size_t b : {4, 16, 64, 256, 1024}) {
            double acc = 0.0;
            for (int d = 0; d < draws; ++d) {
                std::vector<std::size_t> batch(b);
                for (auto& idx : batch) idx = rng.uniform_index(obj->sample_count());
                Vector g = problems::mean_sample_gradient(*obj, probe, batch);
                g -= full;
                acc += numkit::dot(g, g);
            }
            const double rel_var = acc / draws / full_sq;
            var_csv << b << "," << rel_var << "\n";
            const double x = std::log10(static_cast<double>(b));
            const double y = std::log10(rel_var);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            ++count;
        }
        result.variance_slope =
            (count * sxy - sx * sy) / (count * sxx - sx * sx);
    }

    manifest.results() = {{"f_star", result.f_star},
                          {"subopt_b4", result.final_suboptimality[4]},
                          {"subopt_b16", result.final_suboptimality[16]},
                          {"subopt_b1024", result.final_suboptimality[1024]},
                          {"lrs_final", result.lrs_final},
                          {"pbs_final", result.pbs_final},
                          {"fixed_final", result.fixed_final},
                          {"variance_slope", result.variance_slope}};
    manifest.add_timing("total", timer.ms());
    manifest.save(out_dir + "/manifest.json");
    return result;
}

Example4Result reproduce_example4(const std::string& out_dir, std::uint64_t seed,
                                  const ReproduceDefaults& cfg) {
    ensure_directory(out_dir);
    WallTimer timer;
    Manifest manifest("reproduce example 4", seed);
    manifest.config() = {{"full_batch", 6000},
                         {"alpha_sgd", cfg.ex4_alpha_sgd},
                         {"alpha_nag", cfg.ex4_alpha_nag},
                         {"alpha_adagrad", cfg.ex4_alpha_adagrad},
                         {"alpha_adam", cfg.ex4_alpha_adam},
                         {"iterations", cfg.ex4_iters}};

    const auto data = problems::two_gaussians_dataset(6000, seed);
    const auto obj = problems::logistic_objective(data);
    const Vector theta0(obj->dim());
    const StopRule stop{cfg.ex4_iters, 0.0};
    const auto full = BatchSchedule::fixed(obj->sample_count());

    auto run_method = [&](MethodConfig::Kind kind, double alpha, const std::string& name) {
        MethodConfig method;
        method.kind = kind;
        OptState state(theta0, numkit::RngStream(seed));
        auto run = firstorder::run(*obj, std::move(state), method, StepSchedule::constant(alpha),
                                   full, stop, 5);
        firstorder::save_trace_csv(run.trace, out_dir + "/trace_" + name + ".csv",
                                   deterministic_csv());
        return run.trace.back().f;
    };

    Example4Result result;
    result.final_sgd = run_method(MethodConfig::Kind::MiniBatch, cfg.ex4_alpha_sgd, "sgd");
    result.final_nag = run_method(MethodConfig::Kind::NAG, cfg.ex4_alpha_nag, "nag");
    result.final_adagrad =
        run_method(MethodConfig::Kind::AdaGrad, cfg.ex4_alpha_adagrad, "adagrad");
    result.final_adam = run_method(MethodConfig::Kind::Adam, cfg.ex4_alpha_adam, "adam");

    manifest.results() = {{"final_sgd", result.final_sgd},
                          {"final_nag", result.final_nag},
                          {"final_adagrad", result.final_adagrad},
                          {"final_adam", result.final_adam}};
    manifest.add_timing("total", timer.ms());
    manifest.save(out_dir + "/manifest.json");
    return result;
}

Example5Result reproduce_example5(const std::string& out_dir, std::uint64_t seed,
                                  const ReproduceDefaults& cfg) {
    ensure_directory(out_dir);
    WallTimer timer;
    Manifest manifest("reproduce example 5", seed);
    manifest.config() = {{"adam_alpha", cfg.ex5_adam_alpha},
                         {"total_iterations", cfg.ex5_total_iters},
                         {"lbfgs_memory", cfg.ex5_lbfgs_memory},
                         {"problem", "1-D Poisson PINN, 1-16-16-1 tanh"}};

    const auto fx = problems::pinn_poisson_fixture(seed);
    const auto obj = fx.objective();
    const StopRule stop{cfg.ex5_total_iters, 0.0};

    Example5Result result;
    {
        MethodConfig adam;
        adam.kind = MethodConfig::Kind::Adam;
        OptState state(fx.theta0, numkit::RngStream(seed));
        auto run = firstorder::run(*obj, std::move(state), adam,
                                   StepSchedule::constant(cfg.ex5_adam_alpha),
                                   BatchSchedule::fixed(obj->sample_count()), stop, 5);
        result.final_adam = run.trace.back().f;
        firstorder::save_trace_csv(run.trace, out_dir + "/trace_adam.csv", deterministic_csv());
    }
    secondorder::LbfgsOptions lbfgs_opts;
    lbfgs_opts.memory = cfg.ex5_lbfgs_memory;
    {
        auto opts = lbfgs_opts;
        opts.max_iter = cfg.ex5_total_iters;
        auto run = secondorder::lbfgs_run(*obj, fx.theta0, opts);
        result.final_lbfgs = run.trace.back().f;
        TraceCsvOptions csv = deterministic_csv();
        csv.second_order_columns = true;
        firstorder::save_trace_csv(run.trace, out_dir + "/trace_lbfgs.csv", csv);
    }
    {
        hybrid::SwitchPolicy policy;
        policy.max_adam_iters = cfg.ex5_total_iters;
        hybrid::AdamConfig adam_cfg;
        adam_cfg.alpha = cfg.ex5_adam_alpha;
        auto run = hybrid::hybrid_run(*obj, fx.theta0, adam_cfg, lbfgs_opts, policy,
                                      cfg.ex5_total_iters);
        result.final_hybrid = obj->value(run.final_theta);
        result.switch_iteration = run.switch_iteration;
        TraceCsvOptions csv = deterministic_csv();
        csv.phase_column = true;
        firstorder::save_trace_csv(run.trace, out_dir + "/trace_hybrid.csv", csv);
    }

    manifest.results() = {{"final_adam", result.final_adam},
                          {"final_lbfgs", result.final_lbfgs},
                          {"final_hybrid", result.final_hybrid}};
    if (result.switch_iteration)
        manifest.results()["switch_iteration"] = *result.switch_iteration;
    manifest.add_timing("total", timer.ms());
    manifest.save(out_dir + "/manifest.json");
    return result;
}

void reproduce_poisson_sampling(const std::string& out_dir) {
    ensure_directory(out_dir);
    WallTimer timer;
    Manifest manifest("reproduce poisson_sampling", 0);
    manifest.config() = {{"pool_points", 512}, {"beta", 1.0}};

    const auto study = sampleweight::poisson_sampling_study();
    sampleweight::save_study_json(study, out_dir + "/study.json");

    // residual-driven density and point weights at θ = (0,0), where the
    // residual is the negated forcing
    auto density = sampleweight::uniform_density_1d(512);
    Vector eta(512);
    for (std::size_t j = 0; j < 512; ++j)
        eta[j] = std::abs(problems::PoissonSurrogate::residual(density.candidate_pool[j][0],
                                                               Vector{0.0, 0.0}));
    density = sampleweight::update_density(std::move(density.candidate_pool), eta, 1.0, 1);
    sampleweight::save_density_csv(density, out_dir + "/density.csv");

    const auto fx = problems::poisson_surrogate_fixture();
    Vector uniform_res(fx.uniform_points.size());
    for (std::size_t j = 0; j < fx.uniform_points.size(); ++j)
        uniform_res[j] = problems::PoissonSurrogate::residual(fx.uniform_points[j], Vector{0.0, 0.0});
    sampleweight::save_weights_csv(sampleweight::residual_point_weights(uniform_res, 1.0),
                                   out_dir + "/weights.csv");
    manifest.results() = {{"kappa_uniform", study.kappa_5},
                          {"kappa_refined", study.kappa_7},
                          {"lambda_min_increases", study.lambda_min_increases},
                          {"kappa_decreases", study.kappa_decreases}};
    manifest.add_timing("total", timer.ms());
    manifest.save(out_dir + "/manifest.json");
}

void reproduce(const std::string& example, const std::string& out_dir,
               std::optional<std::uint64_t> seed) {
    if (example == "1") {
        reproduce_example1(out_dir, seed.value_or(1));
    } else if (example == "2") {
        reproduce_example2(out_dir, seed.value_or(2));
    } else if (example == "3") {
        reproduce_example3(out_dir, seed.value_or(4));
    } else if (example == "4") {
        reproduce_example4(out_dir, seed.value_or(4));
    } else if (example == "5") {
        reproduce_example5(out_dir, seed.value_or(3));
    } else if (example == "poisson_sampling") {
        reproduce_poisson_sampling(out_dir);
    } else {
        throw std::invalid_argument("reproduce: unknown example '" + example + "'");
    }
}

}  // namespace optlab::harness
