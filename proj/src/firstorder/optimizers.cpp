#include "optlab/firstorder/optimizers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace optlab::firstorder {

namespace {

Vector batch_or_full_gradient(const FiniteSumObjective& obj, const Vector& theta,
                              const std::vector<std::size_t>* batch) {
    if (batch == nullptr) return obj.gradient(theta);
    if (batch->empty()) throw std::invalid_argument("optimizer step: empty batch");
    return problems::mean_sample_gradient(obj, theta, *batch);
}

void check_finite(const Vector& g) {
    if (!g.all_finite()) throw std::runtime_error("optimizer step: non-finite gradient");
}

void consume(OptState& state, const std::vector<std::size_t>* batch, std::size_t m) {
    state.samples_consumed += batch ? static_cast<double>(batch->size()) : static_cast<double>(m);
    ++state.k;
}

}  // namespace

void gd_step(const FiniteSumObjective& obj, OptState& state, double alpha) {
    if (alpha <= 0.0) throw std::invalid_argument("gd_step: alpha must be positive");
    Vector g = obj.gradient(state.theta);
    check_finite(g);
    state.prev_theta = state.theta;
    numkit::axpy(-alpha, g, state.theta);
    consume(state, nullptr, obj.sample_count());
}

void minibatch_step(const FiniteSumObjective& obj, OptState& state, double alpha,
                    const std::vector<std::size_t>& batch) {
    if (batch.empty()) throw std::invalid_argument("minibatch_step: empty batch");
    for (std::size_t i : batch)
        if (i >= obj.sample_count()) throw std::out_of_range("minibatch_step: index out of range");
    Vector g = problems::mean_sample_gradient(obj, state.theta, batch);
    check_finite(g);
    state.prev_theta = state.theta;
    numkit::axpy(-alpha, g, state.theta);
    consume(state, &batch, obj.sample_count());
}

void sgd_step(const FiniteSumObjective& obj, OptState& state, double alpha) {
    const std::vector<std::size_t> batch{state.rng.uniform_index(obj.sample_count())};
    minibatch_step(obj, state, alpha, batch);
}

void heavy_ball_step(const FiniteSumObjective& obj, OptState& state, double alpha, double beta,
                     const std::vector<std::size_t>* batch) {
    if (alpha <= 0.0 || beta < 0.0 || beta >= 1.0)
        throw std::invalid_argument("heavy_ball_step: bad parameters");
    Vector g = batch_or_full_gradient(obj, state.theta, batch);
    check_finite(g);
    Vector momentum = state.theta;
    momentum -= state.prev_theta;
    state.prev_theta = state.theta;
    numkit::axpy(-alpha, g, state.theta);
    numkit::axpy(beta, momentum, state.theta);
    consume(state, batch, obj.sample_count());
}

void nag_step(const FiniteSumObjective& obj, OptState& state, double alpha, double beta,
              const std::vector<std::size_t>* batch) {
    if (alpha <= 0.0 || beta < 0.0 || beta >= 1.0)
        throw std::invalid_argument("nag_step: bad parameters");
    Vector momentum = state.theta;
    momentum -= state.prev_theta;
    Vector lookahead = state.theta;
    numkit::axpy(beta, momentum, lookahead);
    Vector g = batch_or_full_gradient(obj, lookahead, batch);
    check_finite(g);
    state.prev_theta = state.theta;
    numkit::axpy(-alpha, g, state.theta);
    numkit::axpy(beta, momentum, state.theta);
    consume(state, batch, obj.sample_count());
}

void adagrad_step(const FiniteSumObjective& obj, OptState& state, double alpha, double eps,
                  const std::vector<std::size_t>* batch) {
    if (alpha <= 0.0 || eps <= 0.0) throw std::invalid_argument("adagrad_step: bad parameters");
    Vector g = batch_or_full_gradient(obj, state.theta, batch);
    check_finite(g);
    if (state.grad_sq_accum.empty()) state.grad_sq_accum = Vector(state.theta.size());
    state.prev_theta = state.theta;
    for (std::size_t i = 0; i < state.theta.size(); ++i) {
        state.grad_sq_accum[i] += g[i] * g[i];
        state.theta[i] -= alpha * g[i] / std::sqrt(state.grad_sq_accum[i] + eps);
    }
    consume(state, batch, obj.sample_count());
}

void adam_step(const FiniteSumObjective& obj, OptState& state, double alpha, double beta1,
               double beta2, double eps, const std::vector<std::size_t>* batch) {
    if (alpha <= 0.0 || beta1 < 0.0 || beta1 >= 1.0 || beta2 < 0.0 || beta2 >= 1.0)
        throw std::invalid_argument("adam_step: bad parameters");
    Vector g = batch_or_full_gradient(obj, state.theta, batch);
    check_finite(g);
    if (state.adam_m.empty()) {
        state.adam_m = Vector(state.theta.size());
        state.adam_v = Vector(state.theta.size());
    }
    const double t = static_cast<double>(state.k) + 1.0;  // corrections count from 1
    const double c1 = 1.0 - std::pow(beta1, t);
    const double c2 = 1.0 - std::pow(beta2, t);
    state.prev_theta = state.theta;
    for (std::size_t i = 0; i < state.theta.size(); ++i) {
        state.adam_m[i] = beta1 * state.adam_m[i] + (1.0 - beta1) * g[i];
        state.adam_v[i] = beta2 * state.adam_v[i] + (1.0 - beta2) * g[i] * g[i];
        const double mhat = state.adam_m[i] / c1;
        const double vhat = state.adam_v[i] / c2;
        state.theta[i] -= alpha * mhat / (std::sqrt(vhat) + eps);
    }
    consume(state, batch, obj.sample_count());
}

std::vector<std::size_t> draw_batch(std::size_t m, std::size_t size, OptState& state,
                                    bool with_replacement) {
    if (size == 0) throw std::invalid_argument("draw_batch: empty batch requested");
    if (size >= m) {
        std::vector<std::size_t> all(m);
        std::iota(all.begin(), all.end(), std::size_t{0});
        return all;
    }
    std::vector<std::size_t> batch;
    batch.reserve(size);
    if (with_replacement) {
        for (std::size_t i = 0; i < size; ++i) batch.push_back(state.rng.uniform_index(m));
        return batch;
    }
    if (state.permutation.size() != m) {
        state.permutation.resize(m);
        std::iota(state.permutation.begin(), state.permutation.end(), std::size_t{0});
        state.cursor = m;  // force a shuffle on first use
    }
    for (std::size_t i = 0; i < size; ++i) {
        if (state.cursor >= m) {
            for (std::size_t j = m; j-- > 1;)
                std::swap(state.permutation[j], state.permutation[state.rng.uniform_index(j + 1)]);
            state.cursor = 0;
        }
        batch.push_back(state.permutation[state.cursor++]);
    }
    return batch;
}

const char* method_name(MethodConfig::Kind kind) {
    switch (kind) {
        case MethodConfig::Kind::GD: return "gd";
        case MethodConfig::Kind::SGD: return "sgd";
        case MethodConfig::Kind::MiniBatch: return "minibatch";
        case MethodConfig::Kind::HeavyBall: return "heavy_ball";
        case MethodConfig::Kind::NAG: return "nag";
        case MethodConfig::Kind::AdaGrad: return "adagrad";
        case MethodConfig::Kind::Adam: return "adam";
    }
    return "?";
}

std::optional<MethodConfig::Kind> method_from_name(const std::string& name) {
    using K = MethodConfig::Kind;
    if (name == "gd") return K::GD;
    if (name == "sgd") return K::SGD;
    if (name == "minibatch") return K::MiniBatch;
    if (name == "heavy_ball") return K::HeavyBall;
    if (name == "nag") return K::NAG;
    if (name == "adagrad") return K::AdaGrad;
    if (name == "adam") return K::Adam;
    return std::nullopt;
}

RunResult run(const FiniteSumObjective& obj, OptState state, const MethodConfig& method,
              const StepSchedule& steps, const BatchSchedule& batches, const StopRule& stop,
              std::size_t record_every) {
    if (record_every == 0) record_every = 1;
    RunResult out;
    const std::size_t m = obj.sample_count();
    const auto t0 = std::chrono::steady_clock::now();

    for (std::size_t k = 0;; ++k) {
        const double alpha = steps.at(k);
        std::size_t bsize = m;
        if (method.kind == MethodConfig::Kind::SGD) bsize = 1;
        else if (method.kind != MethodConfig::Kind::GD) bsize = std::min(batches.at(k), m);

        // full-objective observables are evaluated on record steps only;
        // the stop rule and the divergence guard fire at that cadence
        const bool recording = k % record_every == 0 || k >= stop.max_iter;
        bool finite = true;
        bool last = k >= stop.max_iter;
        if (recording) {
            const double f = obj.value(state.theta);
            const double gn = numkit::norm2(obj.gradient(state.theta));
            finite = std::isfinite(f) && f <= 1e12;
            last = !finite || k >= stop.max_iter || (stop.grad_tol > 0.0 && gn <= stop.grad_tol);
            TraceRecord rec;
            rec.k = k;
            rec.epoch = state.samples_consumed / static_cast<double>(m);
            rec.f = f;
            rec.grad_norm = gn;
            rec.step_size = alpha;
            rec.batch_size = bsize;
            rec.wall_ms =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                    .count();
            out.trace.push_back(rec);
        }
        if (!finite) {
            out.diverged = true;
            break;
        }
        if (last) break;

        try {
        switch (method.kind) {
            case MethodConfig::Kind::GD: gd_step(obj, state, alpha); break;
            case MethodConfig::Kind::SGD: sgd_step(obj, state, alpha); break;
            case MethodConfig::Kind::MiniBatch: {
                const auto batch = draw_batch(m, bsize, state, method.with_replacement);
                minibatch_step(obj, state, alpha, batch);
                break;
            }
            case MethodConfig::Kind::HeavyBall: {
                if (bsize >= m) {
                    heavy_ball_step(obj, state, alpha, method.beta);
                } else {
                    const auto batch = draw_batch(m, bsize, state, method.with_replacement);
                    heavy_ball_step(obj, state, alpha, method.beta, &batch);
                }
                break;
            }
            case MethodConfig::Kind::NAG: {
                if (bsize >= m) {
                    nag_step(obj, state, alpha, method.beta);
                } else {
                    const auto batch = draw_batch(m, bsize, state, method.with_replacement);
                    nag_step(obj, state, alpha, method.beta, &batch);
                }
                break;
            }
            case MethodConfig::Kind::AdaGrad: {
                if (bsize >= m) {
                    adagrad_step(obj, state, alpha, method.eps);
                } else {
                    const auto batch = draw_batch(m, bsize, state, method.with_replacement);
                    adagrad_step(obj, state, alpha, method.eps, &batch);
                }
                break;
            }
            case MethodConfig::Kind::Adam: {
                if (bsize >= m) {
                    adam_step(obj, state, alpha, method.beta1, method.beta2, method.eps);
                } else {
                    const auto batch = draw_batch(m, bsize, state, method.with_replacement);
                    adam_step(obj, state, alpha, method.beta1, method.beta2, method.eps, &batch);
                }
                break;
            }
        }
        } catch (const std::runtime_error&) {
            // non-finite gradient inside a step: truncate as a divergence
            out.diverged = true;
            break;
        }
    }
    out.final_theta = state.theta;
    return out;
}

}  // namespace optlab::firstorder
