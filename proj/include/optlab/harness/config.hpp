#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace optlab::harness {

/// Single-experiment configuration; unknown JSON keys are rejected and all
/// defaults are echoed into the output manifest.
struct ExperimentConfig {
    std::string problem = "logistic6000";
    std::string method = "gd";
    // step schedule
    std::string schedule_kind = "constant";  // constant | polynomial_decay | inverse_sqrt
    double alpha0 = 1e-3;
    double tau = 0.0;
    double power = 1.0;
    // batch schedule
    std::string batch_kind = "fixed";  // fixed | linear_growth
    std::size_t batch_size = 0;        // 0 = full batch
    std::size_t batch_b0 = 16;
    std::size_t batch_bT = 1024;
    std::size_t batch_horizon = 1000;
    // method constants
    double beta = 0.9;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    std::size_t lbfgs_memory = 10;
    // stopping and bookkeeping
    std::size_t max_iter = 100;
    double grad_tol = 0.0;
    std::size_t record_every = 1;
    std::vector<std::uint64_t> seeds{1};
    std::string output = "out";

    static ExperimentConfig from_json(const nlohmann::json& j);
    static ExperimentConfig load(const std::string& path);
    nlohmann::json to_json() const;
};

/// Runs the configured experiment per seed, writing trace_<seed>.csv files
/// and a manifest under the output directory. Returns the final objective
/// of the last seed.
double run_experiment(const ExperimentConfig& config, const std::string& out_dir);

}  // namespace optlab::harness
