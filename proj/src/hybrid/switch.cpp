#include "optlab/hybrid/switch.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace optlab::hybrid {

void SwitchPolicy::validate() const {
    if (window < 1) throw std::invalid_argument("SwitchPolicy: window must be >= 1");
    if (!(rel_threshold > 0.0)) throw std::invalid_argument("SwitchPolicy: threshold must be > 0");
    if (patience < 1) throw std::invalid_argument("SwitchPolicy: patience must be >= 1");
}

namespace {

/// Mean of grad_norms over (k−W, k], clamped at the start of the history.
double window_mean(const std::vector<double>& g, std::size_t k, std::size_t W) {
    const std::size_t lo = k + 1 >= W ? k + 1 - W : 0;
    double acc = 0.0;
    for (std::size_t i = lo; i <= k; ++i) acc += g[i];
    return acc / static_cast<double>(k - lo + 1);
}

}  // namespace

std::optional<std::size_t> plateau_detector(const std::vector<double>& grad_norms,
                                            const SwitchPolicy& policy) {
    policy.validate();
    if (grad_norms.empty()) throw std::invalid_argument("plateau_detector: empty trace");
    if (std::isinf(policy.rel_threshold))
        return policy.min_iters < grad_norms.size() ? std::optional<std::size_t>(policy.min_iters)
                                                    : std::nullopt;

    const std::size_t W = policy.window;
    std::size_t consecutive = 0;
    for (std::size_t j = 1;; ++j) {
        const std::size_t k = policy.min_iters + W * j;
        if (k >= grad_norms.size()) return std::nullopt;
        if (k < W) continue;  // no reference window yet
        const double recent = window_mean(grad_norms, k, W);
        const double past = window_mean(grad_norms, k - W, W);
        const bool pass = past > 0.0 && std::abs(recent - past) / past < policy.rel_threshold;
        consecutive = pass ? consecutive + 1 : 0;
        if (consecutive >= policy.patience) return k;
    }
}

HybridResult hybrid_run(const FiniteSumObjective& obj, Vector theta0, const AdamConfig& adam_cfg,
                        const secondorder::LbfgsOptions& lbfgs_cfg, const SwitchPolicy& policy,
                        std::size_t total_iters) {
    policy.validate();
    HybridResult out;

    firstorder::OptState state(std::move(theta0));
    std::vector<double> grad_norms;
    std::size_t consecutive = 0;
    std::size_t next_check = policy.min_iters + policy.window;
    const bool immediate = std::isinf(policy.rel_threshold);

    std::size_t k = 0;
    for (; k < std::min(policy.max_adam_iters, total_iters); ++k) {
        const double f = obj.value(state.theta);
        const double gn = numkit::norm2(obj.gradient(state.theta));
        grad_norms.push_back(gn);

        TraceRecord rec;
        rec.k = k;
        rec.epoch = static_cast<double>(k);
        rec.f = f;
        rec.grad_norm = gn;
        rec.step_size = adam_cfg.alpha;
        rec.batch_size = obj.sample_count();
        rec.phase = "adam";

        bool fire = false;
        if (immediate) {
            fire = k >= policy.min_iters;
        } else if (k == next_check && k >= policy.window) {
            const double recent = window_mean(grad_norms, k, policy.window);
            const double past = window_mean(grad_norms, k - policy.window, policy.window);
            const bool pass =
                past > 0.0 && std::abs(recent - past) / past < policy.rel_threshold;
            consecutive = pass ? consecutive + 1 : 0;
            next_check += policy.window;
            fire = consecutive >= policy.patience;
        } else if (k == next_check) {
            next_check += policy.window;
        }

        if (fire) {
            out.switch_iteration = k;
            break;
        }
        out.trace.push_back(rec);
        firstorder::adam_step(obj, state, adam_cfg.alpha, adam_cfg.beta1, adam_cfg.beta2,
                              adam_cfg.eps);
    }
    if (!out.switch_iteration && k < total_iters) out.switch_iteration = k;  // budget switch

    if (k >= total_iters) {
        // never switched within budget: the trace is an Adam-only run
        out.final_theta = state.theta;
        TraceRecord rec;
        rec.k = k;
        rec.epoch = static_cast<double>(k);
        rec.f = obj.value(state.theta);
        rec.grad_norm = numkit::norm2(obj.gradient(state.theta));
        rec.batch_size = obj.sample_count();
        rec.phase = "adam";
        out.trace.push_back(rec);
        out.switch_iteration.reset();
        return out;
    }

    secondorder::LbfgsOptions cfg = lbfgs_cfg;
    cfg.max_iter = total_iters - k;
    secondorder::LbfgsResult lb = secondorder::lbfgs_run(obj, state.theta, cfg);
    for (auto rec : lb.trace) {
        rec.k += k;
        rec.epoch = static_cast<double>(rec.k);
        rec.phase = "lbfgs";
        out.trace.push_back(rec);
    }
    out.final_theta = lb.final_theta;
    out.lbfgs_failed = lb.line_search_failed;
    return out;
}

}  // namespace optlab::hybrid
