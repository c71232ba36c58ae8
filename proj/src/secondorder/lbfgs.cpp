#include "optlab/secondorder/lbfgs.hpp"

#include <chrono>
#include <cmath>

#include "optlab/secondorder/line_search.hpp"

namespace optlab::secondorder {

bool LbfgsMemory::push(Vector s, Vector y) {
    const double ys = numkit::dot(y, s);
    if (ys <= 1e-10 * numkit::norm2(y) * numkit::norm2(s)) return false;
    if (capacity_ == 0) return false;
    if (pairs_.size() == capacity_) pairs_.pop_front();
    pairs_.push_back(SecantPair{std::move(s), std::move(y), 1.0 / ys});
    return true;
}

double LbfgsMemory::scale() const {
    if (pairs_.empty()) return 1.0;
    const SecantPair& newest = pairs_.back();
    return numkit::dot(newest.s, newest.y) / numkit::dot(newest.y, newest.y);
}

Vector lbfgs_two_loop(const Vector& g, const LbfgsMemory& memory) {
    Vector q = g;
    const std::size_t S = memory.size();
    std::vector<double> alpha(S);
    for (std::size_t idx = S; idx-- > 0;) {  // newest to oldest
        const SecantPair& pr = memory.pair(idx);
        alpha[idx] = pr.rho * numkit::dot(pr.s, q);
        numkit::axpy(-alpha[idx], pr.y, q);
    }
    Vector r = q;
    r *= memory.scale();
    for (std::size_t idx = 0; idx < S; ++idx) {  // oldest to newest
        const SecantPair& pr = memory.pair(idx);
        const double beta = pr.rho * numkit::dot(pr.y, r);
        numkit::axpy(alpha[idx] - beta, pr.s, r);
    }
    return r;
}

LbfgsResult lbfgs_run(const FiniteSumObjective& obj, Vector theta0, const LbfgsOptions& opts) {
    LbfgsResult out;
    LbfgsMemory memory(opts.memory);
    Vector theta = std::move(theta0);
    Vector g = obj.gradient(theta);
    double f = obj.value(theta);
    bool prev_failure = false;
    const std::size_t m = obj.sample_count();
    const auto t0 = std::chrono::steady_clock::now();

    auto value_fn = [&obj](const Vector& t) { return obj.value(t); };
    auto grad_fn = [&obj](const Vector& t) { return obj.gradient(t); };

    for (std::size_t k = 0;; ++k) {
        const double gn = numkit::norm2(g);
        TraceRecord rec;
        rec.k = k;
        rec.epoch = static_cast<double>(k);
        rec.f = f;
        rec.grad_norm = gn;
        rec.batch_size = m;
        rec.wall_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

        if (!std::isfinite(f) || k >= opts.max_iter || (opts.grad_tol > 0.0 && gn <= opts.grad_tol) ||
            gn == 0.0) {
            out.trace.push_back(rec);
            break;
        }

        Vector p = lbfgs_two_loop(g, memory);
        p *= -1.0;
        double slope = numkit::dot(p, g);
        if (slope >= 0.0) {
            // PD memory should prevent this; recover by resetting
            memory.clear();
            p = g;
            p *= -1.0;
            slope = -numkit::dot(g, g);
        }

        LineSearchResult ls = line_search_wolfe(value_fn, grad_fn, theta, p, f, slope, opts.c1,
                                                opts.c2, 1.0, opts.max_line_search);
        if (!ls.success) {
            if (prev_failure) {
                out.trace.push_back(rec);
                out.line_search_failed = true;
                break;
            }
            prev_failure = true;
            memory.clear();
            // safeguarded gradient step
            p = g;
            p *= -1.0;
            slope = -numkit::dot(g, g);
            ls = line_search_armijo(value_fn, theta, p, f, slope, opts.c1, 0.5,
                                    1.0 / std::max(1.0, gn), 60);
            if (!ls.success) {
                out.trace.push_back(rec);
                out.line_search_failed = true;
                break;
            }
        } else {
            prev_failure = false;
        }

        rec.step_size = ls.alpha;
        rec.ls_evals = ls.evals;
        out.trace.push_back(rec);

        Vector theta_next = theta;
        numkit::axpy(ls.alpha, p, theta_next);
        Vector g_next = obj.gradient(theta_next);

        Vector s = theta_next;
        s -= theta;
        Vector y = g_next;
        y -= g;
        memory.push(std::move(s), std::move(y));

        theta = std::move(theta_next);
        g = std::move(g_next);
        f = obj.value(theta);
    }
    out.final_theta = theta;
    return out;
}

}  // namespace optlab::secondorder
