#include <iostream>

#include "CLI11.hpp"

#include "optlab/admodel/gradcheck.hpp"
#include "optlab/harness/config.hpp"
#include "optlab/harness/manifest.hpp"
#include "optlab/harness/reproduce.hpp"
#include "optlab/harness/theory.hpp"
#include "optlab/kerneldx/landscape.hpp"
#include "optlab/kerneldx/ntk.hpp"
#include "optlab/problems/fixtures.hpp"

namespace {

using optlab::numkit::Vector;

struct NamedProblem {
    std::shared_ptr<optlab::problems::FiniteSumObjective> objective;
    Vector theta0;
    std::vector<std::pair<std::size_t, std::size_t>> blocks;
};

NamedProblem named_problem(const std::string& name, std::uint64_t seed) {
    using namespace optlab::problems;
    NamedProblem p;
    if (name == "spectral_bias") {
        const auto fx = spectral_bias_fixture(seed);
        p.objective = fx.objective();
        p.theta0 = fx.theta0;
        p.blocks = optlab::kerneldx::mlp_blocks(fx.net);
    } else if (name == "regression2d") {
        const auto fx = regression_2d_fixture(seed);
        p.objective = fx.objective();
        p.theta0 = fx.theta0;
        p.blocks = optlab::kerneldx::mlp_blocks(fx.net);
    } else if (name == "pinn_poisson") {
        const auto fx = pinn_poisson_fixture(seed);
        p.objective = fx.objective();
        p.theta0 = fx.theta0;
        p.blocks = optlab::kerneldx::mlp_blocks(fx.net);
    } else if (name == "logistic6000") {
        p.objective = logistic_objective(two_gaussians_dataset(6000, 4));
        p.theta0 = Vector(p.objective->dim());
    } else {
        throw CLI::ValidationError("unknown problem '" + name + "'");
    }
    return p;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"optlab: optimization laboratory for scientific machine learning"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags are accepted after the subcommand too

    std::uint64_t seed = 0;
    bool seed_set = false;
    std::string out_dir = "out";
    std::string config_path;
    bool quiet = false;
    app.add_option("--seed", seed, "random seed")->each([&](const std::string&) { seed_set = true; });
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--config", config_path, "configuration file (JSON)");
    app.add_flag("--quiet", quiet, "suppress console output");

    auto* cmd_run = app.add_subcommand("run", "single experiment from a config file");

    std::string example;
    auto* cmd_repro = app.add_subcommand("reproduce", "rerun one of the packaged examples");
    cmd_repro->add_option("example", example, "1|2|3|4|5|poisson_sampling")->required();

    std::string problem = "regression2d";
    auto* cmd_ntk = app.add_subcommand("ntk-report", "empirical kernel spectrum at the seed init");
    cmd_ntk->add_option("--problem", problem, "fixture name");

    double half_width = 1.0;
    std::size_t steps = 21;
    auto* cmd_land = app.add_subcommand("landscape", "2-D objective landscape around the init");
    cmd_land->add_option("--problem", problem, "fixture name");
    cmd_land->add_option("--half-width", half_width, "grid half width");
    cmd_land->add_option("--steps", steps, "odd grid resolution");

    auto* cmd_grad = app.add_subcommand("gradcheck", "finite-difference gradient verification");
    cmd_grad->add_option("--problem", problem, "fixture name");

    std::string theorem;
    std::size_t n_seeds = 200;
    auto* cmd_theory = app.add_subcommand("verify-theory", "convergence theorem checks");
    cmd_theory->add_option("theorem", theorem, "strongly-convex|noise-floor|convex-rate|nonconvex")
        ->required();
    cmd_theory->add_option("--seeds", n_seeds, "Monte-Carlo seed count");

    std::string study;
    auto* cmd_study = app.add_subcommand("sample-study", "collocation sampling study");
    cmd_study->add_option("study", study, "poisson")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*cmd_run) {
            if (config_path.empty()) throw CLI::ValidationError("run requires --config");
            auto config = optlab::harness::ExperimentConfig::load(config_path);
            if (seed_set) config.seeds = {seed};
            const double final_f = optlab::harness::run_experiment(config, out_dir);
            if (!quiet) std::cout << "final f = " << final_f << " (outputs in " << out_dir << ")\n";
        } else if (*cmd_repro) {
            optlab::harness::reproduce(example, out_dir,
                                       seed_set ? std::optional<std::uint64_t>(seed) : std::nullopt);
            if (!quiet) std::cout << "example " << example << " written to " << out_dir << "\n";
        } else if (*cmd_ntk) {
            const auto p = named_problem(problem, seed_set ? seed : 1);
            const auto report = optlab::kerneldx::empirical_ntk(*p.objective, p.theta0);
            optlab::harness::ensure_directory(out_dir);
            optlab::kerneldx::save_spectrum_csv(report, out_dir + "/spectrum.csv");
            if (!quiet)
                std::cout << "kappa = " << report.kappa << " (floored modes "
                          << report.floored_modes << "), spectrum in " << out_dir << "\n";
        } else if (*cmd_land) {
            const auto p = named_problem(problem, seed_set ? seed : 1);
            optlab::kerneldx::LandscapeOptions opts;
            opts.half_width = half_width;
            opts.steps = steps;
            opts.blocks = p.blocks;
            optlab::numkit::RngStream rng(seed_set ? seed : 1);
            const auto grid = optlab::kerneldx::landscape_projection(*p.objective, p.theta0, opts, rng);
            optlab::harness::ensure_directory(out_dir);
            optlab::kerneldx::save_landscape_csv(grid, out_dir + "/landscape.csv");
            if (!quiet)
                std::cout << "axis anisotropy = " << optlab::kerneldx::axis_anisotropy(grid)
                          << ", grid in " << out_dir << "\n";
        } else if (*cmd_grad) {
            const auto p = named_problem(problem, seed_set ? seed : 1);
            const auto rep = optlab::admodel::gradcheck(
                [&](const Vector& t) { return p.objective->value(t); },
                [&](const Vector& t) { return p.objective->gradient(t); }, p.theta0, 10,
                seed_set ? seed : 1);
            std::cout << "max relative error = " << rep.max_rel_err << " (worst coordinate "
                      << rep.worst_coordinate << ")\n";
        } else if (*cmd_theory) {
            using namespace optlab::harness;
            optlab::harness::ensure_directory(out_dir);
            VerifyReport report;
            if (theorem == "strongly-convex") {
                const auto q = quadratic_1_10(std::sqrt(0.1), 64, 11);
                report = verify_strongly_convex_bound(*q, Vector{3.0, -2.0}, 0.04, 2000, n_seeds);
            } else if (theorem == "noise-floor") {
                const auto q = quadratic_1_10(std::sqrt(0.1), 64, 11);
                report = verify_noise_floor_scaling(*q, Vector{3.0, -2.0}, {0.04, 0.02, 0.01},
                                                    n_seeds);
            } else if (theorem == "convex-rate") {
                const auto q = quadratic_logspaced(40, std::sqrt(0.01), 64, 12);
                report = verify_convex_rate(*q, Vector(40, 1.0), 0.25, {100, 1000, 10000}, n_seeds);
            } else if (theorem == "nonconvex") {
                const auto fx = optlab::problems::spectral_bias_fixture(1);
                // small nonconvex least squares: 1-8-1 tanh on 32 points
                optlab::admodel::MlpSpec net;
                net.layer_widths = {1, 8, 1};
                optlab::problems::Dataset data;
                for (int i = 0; i < 32; ++i) {
                    const double x = static_cast<double>(i) / 32.0;
                    data.inputs.push_back(Vector{x});
                    data.targets.push_back(Vector{std::sin(3.0 * x)});
                }
                optlab::numkit::RngStream rng(5);
                const Vector theta0 = optlab::admodel::init_params(net, rng);
                auto obj = optlab::problems::least_squares_objective(
                    std::make_shared<optlab::problems::MlpModel>(net), data);
                report = verify_nonconvex_stationarity(*obj, theta0, 1000, n_seeds);
            } else {
                throw CLI::ValidationError("unknown theorem '" + theorem + "'");
            }
            save_report_json(report, out_dir + "/report.json");
            save_report_curve_csv(report, out_dir + "/curve.csv");
            if (!quiet) {
                for (const auto& a : report.assertions)
                    std::cout << (a.pass ? "PASS " : "FAIL ") << a.name << ": empirical "
                              << a.empirical << " vs bound " << a.bound << "\n";
            }
            return report.passed() ? 0 : 1;
        } else if (*cmd_study) {
            if (study != "poisson") throw CLI::ValidationError("unknown study '" + study + "'");
            optlab::harness::reproduce_poisson_sampling(out_dir);
            if (!quiet) std::cout << "study written to " << out_dir << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
