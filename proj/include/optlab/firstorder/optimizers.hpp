#pragma once

#include <optional>
#include <vector>

#include "optlab/firstorder/schedule.hpp"
#include "optlab/firstorder/trace.hpp"
#include "optlab/numkit/rng.hpp"
#include "optlab/problems/objective.hpp"

namespace optlab::firstorder {

using numkit::RngStream;
using numkit::Vector;
using problems::FiniteSumObjective;

/// Mutable optimizer state; owns its random stream. Buffers are created
/// lazily by the step that needs them.
struct OptState {
    Vector theta;
    std::size_t k = 0;
    double samples_consumed = 0.0;
    Vector prev_theta;     // θ_{k-1}; equals θ₀ before the first step
    Vector grad_sq_accum;  // AdaGrad G_k
    Vector adam_m;
    Vector adam_v;
    RngStream rng;

    // shuffled-epoch bookkeeping (without-replacement sampling)
    std::vector<std::size_t> permutation;
    std::size_t cursor = 0;

    explicit OptState(Vector theta0, RngStream stream = RngStream(0))
        : theta(std::move(theta0)), prev_theta(theta), rng(stream) {}
};

/// θ ← θ − α·∇f(θ). Throws on a non-finite gradient.
void gd_step(const FiniteSumObjective& obj, OptState& state, double alpha);

/// θ ← θ − (α/|I|)·Σ_{i∈I} ∇f_i(θ) over an explicit index set.
void minibatch_step(const FiniteSumObjective& obj, OptState& state, double alpha,
                    const std::vector<std::size_t>& batch);

/// Single uniformly drawn sample, consumed from state.rng.
void sgd_step(const FiniteSumObjective& obj, OptState& state, double alpha);

/// θ_{k+1} = θ_k − α·g_k + β(θ_k − θ_{k−1}).
void heavy_ball_step(const FiniteSumObjective& obj, OptState& state, double alpha, double beta,
                     const std::vector<std::size_t>* batch = nullptr);

/// Gradient evaluated at the look-ahead point θ_k + β(θ_k − θ_{k−1}).
void nag_step(const FiniteSumObjective& obj, OptState& state, double alpha, double beta,
              const std::vector<std::size_t>* batch = nullptr);

void adagrad_step(const FiniteSumObjective& obj, OptState& state, double alpha, double eps,
                  const std::vector<std::size_t>* batch = nullptr);

void adam_step(const FiniteSumObjective& obj, OptState& state, double alpha, double beta1,
               double beta2, double eps, const std::vector<std::size_t>* batch = nullptr);

/// Draw a batch of the requested size. With replacement by default; the
/// shuffled-epoch variant cycles a per-epoch permutation. A request of the
/// full sample count returns every index exactly once.
std::vector<std::size_t> draw_batch(std::size_t m, std::size_t size, OptState& state,
                                    bool with_replacement);

struct MethodConfig {
    enum class Kind { GD, SGD, MiniBatch, HeavyBall, NAG, AdaGrad, Adam };
    Kind kind = Kind::GD;
    double beta = 0.9;  // momentum weight
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    bool with_replacement = true;
};

const char* method_name(MethodConfig::Kind kind);
std::optional<MethodConfig::Kind> method_from_name(const std::string& name);

struct StopRule {
    std::size_t max_iter = 100;
    double grad_tol = 0.0;
};

struct RunResult {
    std::vector<TraceRecord> trace;
    bool diverged = false;
    Vector final_theta;
};

/// Applies steps until the stop rule fires, recording one TraceRecord per
/// iteration (k=0 records the initial state). Deterministic given the
/// state's seed. Aborts with a truncated trace when f exceeds 1e12 or
/// stops being finite.
RunResult run(const FiniteSumObjective& obj, OptState state, const MethodConfig& method,
              const StepSchedule& steps, const BatchSchedule& batches, const StopRule& stop,
              std::size_t record_every = 1);

}  // namespace optlab::firstorder
