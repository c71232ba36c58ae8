#include "optlab/harness/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>

#include "optlab/firstorder/optimizers.hpp"
#include "optlab/harness/manifest.hpp"
#include "optlab/harness/synthetic.hpp"
#include "optlab/problems/fixtures.hpp"
#include "optlab/secondorder/lbfgs.hpp"

namespace optlab::harness {

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
    static const std::set<std::string> known{
        "problem",    "method",     "schedule", "batch",   "beta",         "beta1",
        "beta2",      "eps",        "memory",   "max_iter", "grad_tol",    "record_every",
        "seeds",      "output"};
    for (const auto& [key, _] : j.items())
        if (!known.count(key))
            throw std::invalid_argument("ExperimentConfig: unknown key '" + key + "'");

    ExperimentConfig c;
    if (j.contains("problem")) c.problem = j.at("problem").get<std::string>();
    if (j.contains("method")) c.method = j.at("method").get<std::string>();
    if (j.contains("schedule")) {
        const auto& s = j.at("schedule");
        static const std::set<std::string> sk{"kind", "alpha0", "tau", "power"};
        for (const auto& [key, _] : s.items())
            if (!sk.count(key))
                throw std::invalid_argument("ExperimentConfig: unknown schedule key '" + key + "'");
        if (s.contains("kind")) c.schedule_kind = s.at("kind").get<std::string>();
        if (s.contains("alpha0")) c.alpha0 = s.at("alpha0").get<double>();
        if (s.contains("tau")) c.tau = s.at("tau").get<double>();
        if (s.contains("power")) c.power = s.at("power").get<double>();
    }
    if (j.contains("batch")) {
        const auto& b = j.at("batch");
        static const std::set<std::string> bk{"kind", "size", "b0", "bT", "horizon"};
        for (const auto& [key, _] : b.items())
            if (!bk.count(key))
                throw std::invalid_argument("ExperimentConfig: unknown batch key '" + key + "'");
        if (b.contains("kind")) c.batch_kind = b.at("kind").get<std::string>();
        if (b.contains("size")) c.batch_size = b.at("size").get<std::size_t>();
        if (b.contains("b0")) c.batch_b0 = b.at("b0").get<std::size_t>();
        if (b.contains("bT")) c.batch_bT = b.at("bT").get<std::size_t>();
        if (b.contains("horizon")) c.batch_horizon = b.at("horizon").get<std::size_t>();
    }
    if (j.contains("beta")) c.beta = j.at("beta").get<double>();
    if (j.contains("beta1")) c.beta1 = j.at("beta1").get<double>();
    if (j.contains("beta2")) c.beta2 = j.at("beta2").get<double>();
    if (j.contains("eps")) c.eps = j.at("eps").get<double>();
    if (j.contains("memory")) c.lbfgs_memory = j.at("memory").get<std::size_t>();
    if (j.contains("max_iter")) c.max_iter = j.at("max_iter").get<std::size_t>();
    if (j.contains("grad_tol")) c.grad_tol = j.at("grad_tol").get<double>();
    if (j.contains("record_every")) c.record_every = j.at("record_every").get<std::size_t>();
    if (j.contains("seeds")) c.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    if (j.contains("output")) c.output = j.at("output").get<std::string>();
    if (c.seeds.empty()) throw std::invalid_argument("ExperimentConfig: at least one seed");
    return c;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("ExperimentConfig: cannot open " + path);
    nlohmann::json j;
    in >> j;
    return from_json(j);
}

nlohmann::json ExperimentConfig::to_json() const {
    return {
        {"problem", problem},
        {"method", method},
        {"schedule", {{"kind", schedule_kind}, {"alpha0", alpha0}, {"tau", tau}, {"power", power}}},
        {"batch",
         {{"kind", batch_kind},
          {"size", batch_size},
          {"b0", batch_b0},
          {"bT", batch_bT},
          {"horizon", batch_horizon}}},
        {"beta", beta},
        {"beta1", beta1},
        {"beta2", beta2},
        {"eps", eps},
        {"memory", lbfgs_memory},
        {"max_iter", max_iter},
        {"grad_tol", grad_tol},
        {"record_every", record_every},
        {"seeds", seeds},
        {"output", output}};
}

namespace {

struct BuiltProblem {
    std::shared_ptr<problems::FiniteSumObjective> objective;
    numkit::Vector theta0;
};

BuiltProblem build_problem(const std::string& name, std::uint64_t seed) {
    BuiltProblem built;
    if (name == "logistic6000") {
        built.objective = problems::logistic_objective(problems::two_gaussians_dataset(6000, 4));
        built.theta0 = numkit::Vector(built.objective->dim());
    } else if (name == "spectral_bias") {
        const auto fx = problems::spectral_bias_fixture(seed);
        built.objective = fx.objective();
        built.theta0 = fx.theta0;
    } else if (name == "regression2d") {
        const auto fx = problems::regression_2d_fixture(seed);
        built.objective = fx.objective();
        built.theta0 = fx.theta0;
    } else if (name == "pinn_poisson") {
        const auto fx = problems::pinn_poisson_fixture(seed);
        built.objective = fx.objective();
        built.theta0 = fx.theta0;
    } else if (name == "quadratic_1_10") {
        built.objective = quadratic_1_10(std::sqrt(0.1), 64, 11);
        built.theta0 = numkit::Vector{1.0, 1.0};
    } else {
        throw std::invalid_argument("run_experiment: unknown problem '" + name + "'");
    }
    return built;
}

}  // namespace

double run_experiment(const ExperimentConfig& config, const std::string& out_dir) {
    ensure_directory(out_dir);
    Manifest manifest("run", config.seeds.front());
    manifest.config() = config.to_json();

    firstorder::StepSchedule schedule;
    if (config.schedule_kind == "constant") {
        schedule = firstorder::StepSchedule::constant(config.alpha0);
    } else if (config.schedule_kind == "polynomial_decay") {
        schedule = firstorder::StepSchedule::polynomial_decay(config.alpha0, config.tau,
                                                              config.power);
    } else if (config.schedule_kind == "inverse_sqrt") {
        schedule = firstorder::StepSchedule::inverse_sqrt(config.alpha0);
    } else {
        throw std::invalid_argument("run_experiment: unknown schedule '" + config.schedule_kind +
                                    "'");
    }

    double last_final = 0.0;
    for (std::uint64_t seed : config.seeds) {
        const BuiltProblem built = build_problem(config.problem, seed);
        const std::string trace_path = out_dir + "/trace_" + std::to_string(seed) + ".csv";
        firstorder::TraceCsvOptions csv;
        csv.deterministic_wall = true;

        if (config.method == "lbfgs") {
            secondorder::LbfgsOptions opts;
            opts.memory = config.lbfgs_memory;
            opts.max_iter = config.max_iter;
            opts.grad_tol = config.grad_tol;
            const auto run = secondorder::lbfgs_run(*built.objective, built.theta0, opts);
            csv.second_order_columns = true;
            firstorder::save_trace_csv(run.trace, trace_path, csv);
            last_final = built.objective->value(run.final_theta);
            manifest.results()["final_f_seed_" + std::to_string(seed)] = last_final;
            continue;
        }

        const auto kind = firstorder::method_from_name(config.method);
        if (!kind) throw std::invalid_argument("run_experiment: unknown method '" + config.method + "'");
        firstorder::MethodConfig method;
        method.kind = *kind;
        method.beta = config.beta;
        method.beta1 = config.beta1;
        method.beta2 = config.beta2;
        method.eps = config.eps;

        firstorder::BatchSchedule batches;
        const std::size_t m = built.objective->sample_count();
        if (config.batch_kind == "fixed") {
            batches = firstorder::BatchSchedule::fixed(
                config.batch_size == 0 ? m : config.batch_size);
        } else if (config.batch_kind == "linear_growth") {
            batches = firstorder::BatchSchedule::linear_growth(config.batch_b0, config.batch_bT,
                                                               config.batch_horizon);
        } else {
            throw std::invalid_argument("run_experiment: unknown batch kind '" +
                                        config.batch_kind + "'");
        }

        firstorder::OptState state(built.theta0, numkit::RngStream(seed));
        const auto run =
            firstorder::run(*built.objective, std::move(state), method, schedule, batches,
                            firstorder::StopRule{config.max_iter, config.grad_tol},
                            config.record_every);
        firstorder::save_trace_csv(run.trace, trace_path, csv);
        if (run.diverged) manifest.flag_partial("divergence at seed " + std::to_string(seed));
        last_final = run.trace.back().f;
        manifest.results()["final_f_seed_" + std::to_string(seed)] = last_final;
    }
    manifest.save(out_dir + "/manifest.json");
    return last_final;
}

}  // namespace optlab::harness
