#pragma once

#include <optional>
#include <vector>

#include "optlab/firstorder/optimizers.hpp"
#include "optlab/secondorder/lbfgs.hpp"

namespace optlab::hybrid {

using firstorder::TraceRecord;
using numkit::Vector;
using problems::FiniteSumObjective;

/// Plateau rule on the smoothed gradient norm. Moving means ḡ_k over a
/// window of W iterations are compared on the W-grid after min_iters:
/// checks happen at k = min_iters + W·j (j = 1, 2, ...), each check passes
/// when |ḡ_k − ḡ_{k−W}|/ḡ_{k−W} < ρ, and the detector fires at the P-th
/// consecutive passing check. An infinite ρ fires at min_iters directly.
struct SwitchPolicy {
    std::size_t window = 50;      // W
    double rel_threshold = 0.1;   // ρ
    std::size_t patience = 3;     // P
    std::size_t min_iters = 100;
    std::size_t max_adam_iters = 2000;

    void validate() const;
};

/// First iteration index at which the plateau rule fires over the given
/// grad-norm history, or nullopt when it never triggers.
std::optional<std::size_t> plateau_detector(const std::vector<double>& grad_norms,
                                            const SwitchPolicy& policy);

struct AdamConfig {
    double alpha = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

struct HybridResult {
    std::vector<TraceRecord> trace;  // phase ∈ {adam, lbfgs}
    std::optional<std::size_t> switch_iteration;
    Vector final_theta;
    bool lbfgs_failed = false;
};

/// Full-batch Adam until the plateau rule fires (or max_adam_iters), then
/// L-BFGS from the current iterate with fresh memory for the remaining
/// budget.
HybridResult hybrid_run(const FiniteSumObjective& obj, Vector theta0, const AdamConfig& adam_cfg,
                        const secondorder::LbfgsOptions& lbfgs_cfg, const SwitchPolicy& policy,
                        std::size_t total_iters);

}  // namespace optlab::hybrid
